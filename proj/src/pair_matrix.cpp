#include <bijumble/pair_matrix.hpp>

#include <utility>

namespace bijumble
{
    PairMatrix::PairMatrix(const BipartitePairView & pair) :
        _left_ids(pair.left().members()),
        _right_ids(pair.right().members())
    {
        const auto & graph = pair.graph();
        std::vector<int> right_local(graph.vertex_count(), -1);
        for (int j = 0 ; j < int(_right_ids.size()) ; ++j)
            right_local[_right_ids[j]] = j;

        _left_rows.assign(_left_ids.size(), BitRow(_right_ids.size()));
        _right_rows.assign(_right_ids.size(), BitRow(_left_ids.size()));

        const auto & right_mask = pair.right().mask();
        const auto & mask_words = right_mask.words();
        for (int i = 0 ; i < int(_left_ids.size()) ; ++i) {
            const auto & words = graph.row(_left_ids[i]).words();
            for (std::size_t w = 0 ; w < words.size() ; ++w) {
                auto bits = words[w] & mask_words[w];
                while (bits) {
                    int b = std::countr_zero(bits);
                    int j = right_local[w * BitRow::bits_per_word + b];
                    _left_rows[i].set(j);
                    _right_rows[j].set(i);
                    ++_edge_count;
                    bits &= bits - 1;
                }
            }
        }
    }

    auto PairMatrix::transpose() -> void
    {
        std::swap(_left_rows, _right_rows);
        std::swap(_left_ids, _right_ids);
    }
}
