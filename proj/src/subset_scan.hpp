#pragma once

#include <bijumble/pair_matrix.hpp>
#include <bijumble/parallel.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace bijumble::detail
{
    /// Walks subsets S of the matrix's left side in Gray-code order, keeping
    /// each right vertex's degree into S and a histogram of those degrees.
    class SubsetScan
    {
        public:
            explicit SubsetScan(const PairMatrix & matrix) :
                _matrix(&matrix),
                _degree(matrix.right_size(), 0),
                _histogram(matrix.left_size() + 1, 0)
            {
                _histogram[0] = matrix.right_size();
            }

            auto reset(std::uint64_t mask) -> void
            {
                std::fill(_degree.begin(), _degree.end(), 0);
                std::fill(_histogram.begin(), _histogram.end(), 0);
                _histogram[0] = _matrix->right_size();
                _mask = 0;
                _size = 0;
                for (int i = 0 ; i < _matrix->left_size() ; ++i)
                    if ((mask >> i) & 1u)
                        toggle(i);
            }

            auto toggle(int i) -> void
            {
                int delta = ((_mask >> i) & 1u) ? -1 : 1;
                _mask ^= std::uint64_t{1} << i;
                _size += delta;
                _matrix->left_row(i).for_each([&] (std::size_t j) {
                    --_histogram[_degree[j]];
                    _degree[j] += delta;
                    ++_histogram[_degree[j]];
                });
            }

            auto mask() const -> std::uint64_t { return _mask; }
            auto size() const -> int { return _size; }
            auto histogram() const -> const std::vector<int> & { return _histogram; }
            auto degree(int j) const -> int { return _degree[j]; }

            /// Sum of the t largest (or smallest) degrees.
            auto extreme_sum(int t, bool largest) const -> std::int64_t
            {
                std::int64_t sum = 0;
                int left = t;
                for (int step = 0 ; step <= _size && left > 0 ; ++step) {
                    int k = largest ? _size - step : step;
                    int take = std::min(left, _histogram[k]);
                    sum += std::int64_t(take) * k;
                    left -= take;
                }
                return sum;
            }

        private:
            const PairMatrix * _matrix;
            std::vector<int> _degree, _histogram;
            std::uint64_t _mask = 0;
            int _size = 0;
    };

    inline auto gray(std::uint64_t n) -> std::uint64_t { return n ^ (n >> 1); }

    constexpr std::size_t scan_chunks = 64;

    /// Calls visit(scan) for every nonempty subset of the left side, split
    /// into a fixed number of contiguous Gray-code chunks so the per-chunk
    /// results never depend on the worker count.
    template <typename Result_, typename Visit_>
    auto scan_subsets(const PairMatrix & matrix, unsigned workers, Visit_ && visit) -> std::vector<Result_>
    {
        const std::uint64_t total = std::uint64_t{1} << matrix.left_size();
        const std::size_t chunks = std::size_t(std::min<std::uint64_t>(scan_chunks, total));
        return run_chunks<Result_>(chunks, workers, [&] (std::size_t c) {
            Result_ result{};
            std::uint64_t lo = chunk_bound(total, chunks, c), hi = chunk_bound(total, chunks, c + 1);
            SubsetScan scan(matrix);
            scan.reset(gray(lo));
            for (std::uint64_t n = lo ; n < hi ; ++n) {
                if (n != lo)
                    scan.toggle(std::countr_zero(n));
                if (scan.size() > 0)
                    visit(scan, result);
            }
            return result;
        });
    }

    /// Right-side local indices sorted by degree into `mask` (descending
    /// when largest, ascending otherwise; ties by index), truncated to t.
    inline auto extreme_prefix(const PairMatrix & matrix, std::uint64_t mask, int t, bool largest) -> std::vector<int>
    {
        SubsetScan scan(matrix);
        scan.reset(mask);
        std::vector<int> idx(matrix.right_size());
        for (int j = 0 ; j < matrix.right_size() ; ++j)
            idx[j] = j;
        std::stable_sort(idx.begin(), idx.end(), [&] (int x, int y) {
            return largest ? scan.degree(x) > scan.degree(y) : scan.degree(x) < scan.degree(y);
        });
        idx.resize(t);
        std::sort(idx.begin(), idx.end());
        return idx;
    }
}
