#pragma once

#include <bijumble/bit_row.hpp>
#include <bijumble/graph.hpp>

#include <cstdint>
#include <vector>

namespace bijumble
{
    /// The bipartite adjacency of a pair view re-indexed locally: left
    /// vertex i is left().members()[i], right vertex j likewise. Rows over
    /// the opposite side are kept for both sides.
    class PairMatrix
    {
        public:
            explicit PairMatrix(const BipartitePairView & pair);

            auto left_size() const -> int { return int(_left_rows.size()); }
            auto right_size() const -> int { return int(_right_rows.size()); }

            auto left_row(int i) const -> const BitRow & { return _left_rows[i]; }
            auto right_row(int j) const -> const BitRow & { return _right_rows[j]; }
            auto adjacent(int i, int j) const -> bool { return _left_rows[i].test(j); }

            auto left_id(int i) const -> int { return _left_ids[i]; }
            auto right_id(int j) const -> int { return _right_ids[j]; }
            auto left_ids() const -> const std::vector<int> & { return _left_ids; }
            auto right_ids() const -> const std::vector<int> & { return _right_ids; }

            auto edge_count() const -> std::int64_t { return _edge_count; }

            /// Exchanges the roles of the two sides.
            auto transpose() -> void;

        private:
            std::vector<BitRow> _left_rows, _right_rows;
            std::vector<int> _left_ids, _right_ids;
            std::int64_t _edge_count = 0;
    };
}
