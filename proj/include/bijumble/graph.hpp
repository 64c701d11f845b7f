#pragma once

#include <bijumble/bit_row.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bijumble
{
    using Edge = std::pair<int, int>;

    /// Simple undirected graph on vertices 0..n-1, stored as one bit row per
    /// vertex. Immutable once constructed.
    class Graph
    {
        public:
            Graph() = default;

            /// Builds the graph with the given edges, symmetrised and with
            /// duplicates collapsed. Throws RangeError / InvariantError on
            /// out-of-range endpoints and self-loops.
            Graph(int vertex_count, std::span<const Edge> edges);

            auto vertex_count() const -> int { return int(_rows.size()); }
            auto edge_count() const -> std::int64_t { return _edge_count; }

            auto adjacent(int u, int v) const -> bool { return _rows[u].test(v); }
            auto row(int v) const -> const BitRow & { return _rows[v]; }
            auto degree(int v) const -> int { return int(_rows[v].count()); }
            auto max_degree() const -> int;

            /// Edges with u < v, in lexicographic order.
            auto edges() const -> std::vector<Edge>;

            /// The subgraph induced on `vertices`, relabelled 0..k-1 in the
            /// order given.
            auto induced(std::span<const int> vertices) const -> Graph;

            friend auto operator== (const Graph &, const Graph &) -> bool = default;

        private:
            std::vector<BitRow> _rows;
            std::int64_t _edge_count = 0;
    };

    /// Sorted, duplicate-free set of vertex indices of some universe, with a
    /// bit mask over that universe. Immutable once constructed.
    class VertexSet
    {
        public:
            VertexSet() = default;

            /// Throws RangeError if a member is outside [0, universe).
            /// Duplicates are collapsed.
            VertexSet(int universe, std::vector<int> members);

            static auto range(int universe, int first, int last_exclusive) -> VertexSet;

            auto universe() const -> int { return _universe; }
            auto size() const -> int { return int(_members.size()); }
            auto empty() const -> bool { return _members.empty(); }
            auto members() const -> const std::vector<int> & { return _members; }
            auto mask() const -> const BitRow & { return _mask; }
            auto contains(int v) const -> bool { return v >= 0 && v < _universe && _mask.test(v); }
            auto operator[] (int i) const -> int { return _members[i]; }

            auto begin() const { return _members.begin(); }
            auto end() const { return _members.end(); }

            auto disjoint_from(const VertexSet & other) const -> bool;
            auto subset_of(const VertexSet & other) const -> bool;

            friend auto operator== (const VertexSet & a, const VertexSet & b) -> bool
            {
                return a._universe == b._universe && a._members == b._members;
            }

        private:
            int _universe = 0;
            std::vector<int> _members;
            BitRow _mask;
    };

    /// A graph together with two disjoint vertex sets (U, W).
    class BipartitePairView
    {
        public:
            /// Throws InvariantError if the sides intersect, RangeError if a
            /// side belongs to a different universe than the graph.
            BipartitePairView(const Graph & graph, VertexSet left, VertexSet right);

            auto graph() const -> const Graph & { return *_graph; }
            auto left() const -> const VertexSet & { return _left; }
            auto right() const -> const VertexSet & { return _right; }

            /// e(left, right).
            auto edge_count() const -> std::int64_t;

            /// The same pair with the sides exchanged.
            auto swapped() const -> BipartitePairView;

        private:
            const Graph * _graph;
            VertexSet _left, _right;
    };

    /// Host Γ, subgraph G ⊆ Γ on the same vertex universe, and pairwise
    /// disjoint parts X, Y, Z.
    struct TripartiteSystem
    {
        Graph host;
        Graph sub;
        VertexSet x, y, z;

        /// Throws InvariantError if G ⊄ Γ or the parts overlap.
        auto validate() const -> void;
    };

    struct Rational
    {
        std::int64_t num = 0;
        std::int64_t den = 1;

        /// Reduced with positive denominator; throws ParameterError on den == 0.
        static auto make(std::int64_t num, std::int64_t den) -> Rational;

        auto to_double() const -> double { return double(num) / double(den); }

        friend auto operator== (const Rational &, const Rational &) -> bool = default;
    };

    auto to_string(const Rational & r) -> std::string;

    /// Reads the edge-list format: a header line "n=<count>" (a bare integer
    /// is also accepted), then one "u v" per line; '#' starts a comment.
    auto load_graph(std::string_view text) -> Graph;
    auto load_graph_file(const std::string & path) -> Graph;

    /// Writes the edge-list format read by load_graph.
    auto serialize_graph(const Graph & graph) -> std::string;

    /// Parses the vertex list syntax used on the command line and in
    /// instance files: comma- or space-separated integers and inclusive
    /// ranges "a..b".
    auto parse_vertex_list(std::string_view text, int universe) -> VertexSet;

    /// e(U,W) / (|U||W|), exactly. Throws ParameterError if a side is empty.
    auto density(const BipartitePairView & pair) -> Rational;

    /// density / p. Throws ParameterError if p <= 0 or a side is empty.
    auto p_density(const BipartitePairView & pair, double p) -> double;

    /// |N(v) ∩ target|.
    auto degree_into(const Graph & graph, int v, const VertexSet & target) -> int;

    /// |N(u) ∩ N(u') ∩ target|. Throws ParameterError if u == u'.
    auto codegree(int u, int u_prime, const VertexSet & target, const Graph & graph) -> int;

    auto complete_bipartite(int left, int right) -> Graph;
    auto perfect_matching(int half) -> Graph;
}
