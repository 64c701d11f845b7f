#include <bijumble/parallel.hpp>
#include <bijumble/rng.hpp>

#include <algorithm>
#include <numeric>

namespace bijumble
{
    namespace
    {
        std::atomic<unsigned> workers_setting{1};
    }

    auto default_workers() -> unsigned
    {
        return workers_setting.load();
    }

    auto set_default_workers(unsigned workers) -> void
    {
        workers_setting.store(std::max(1u, workers));
    }

    auto Rng::sample(int n, int k) -> std::vector<int>
    {
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        k = std::clamp(k, 0, n);
        for (int i = 0 ; i < k ; ++i) {
            int j = i + int(below(std::uint64_t(n - i)));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }
}
