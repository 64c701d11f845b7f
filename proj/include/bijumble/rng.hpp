#pragma once

#include <cstdint>
#include <vector>

namespace bijumble
{
    /// splitmix64 step; used to derive independent stream seeds.
    inline auto splitmix64(std::uint64_t & state) -> std::uint64_t
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Seed for sub-stream `stream` of `seed`. Trials, restarts and workers
    /// all draw from derived streams so results never depend on scheduling.
    inline auto derive_seed(std::uint64_t seed, std::uint64_t stream) -> std::uint64_t
    {
        std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
        splitmix64(s);
        return splitmix64(s);
    }

    /// xoshiro256** with fully specified output, so seeded runs are
    /// reproducible across standard libraries.
    class Rng
    {
        public:
            explicit Rng(std::uint64_t seed)
            {
                std::uint64_t s = seed;
                for (auto & w : _state)
                    w = splitmix64(s);
            }

            auto next() -> std::uint64_t
            {
                const std::uint64_t result = rotl(_state[1] * 5, 7) * 9;
                const std::uint64_t t = _state[1] << 17;
                _state[2] ^= _state[0];
                _state[3] ^= _state[1];
                _state[1] ^= _state[2];
                _state[0] ^= _state[3];
                _state[2] ^= t;
                _state[3] = rotl(_state[3], 45);
                return result;
            }

            /// Uniform in [0, 1) with 53 random bits.
            auto uniform() -> double
            {
                return double(next() >> 11) * 0x1.0p-53;
            }

            /// Uniform integer in [0, bound); bound > 0.
            auto below(std::uint64_t bound) -> std::uint64_t
            {
                const std::uint64_t limit = -bound % bound;
                for (;;) {
                    std::uint64_t r = next();
                    unsigned __int128 m = (unsigned __int128)r * bound;
                    if (std::uint64_t(m) >= limit)
                        return std::uint64_t(m >> 64);
                }
            }

            auto bernoulli(double p) -> bool
            {
                return uniform() < p;
            }

            /// k distinct indices from [0, n), sorted (partial Fisher-Yates).
            auto sample(int n, int k) -> std::vector<int>;

        private:
            static auto rotl(std::uint64_t x, int k) -> std::uint64_t
            {
                return (x << k) | (x >> (64 - k));
            }

            std::uint64_t _state[4];
    };
}
