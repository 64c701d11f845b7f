#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace bijumble
{
    /// A fixed-length row of bits packed into 64-bit words.
    class BitRow
    {
        public:
            using Word = std::uint64_t;
            static constexpr std::size_t bits_per_word = 64;

            BitRow() = default;

            explicit BitRow(std::size_t size) :
                _size(size),
                _words((size + bits_per_word - 1) / bits_per_word, 0)
            {
            }

            auto size() const -> std::size_t { return _size; }
            auto word_count() const -> std::size_t { return _words.size(); }
            auto words() const -> const std::vector<Word> & { return _words; }

            auto test(std::size_t i) const -> bool
            {
                return (_words[i / bits_per_word] >> (i % bits_per_word)) & 1u;
            }

            auto set(std::size_t i) -> void
            {
                _words[i / bits_per_word] |= Word{1} << (i % bits_per_word);
            }

            auto reset(std::size_t i) -> void
            {
                _words[i / bits_per_word] &= ~(Word{1} << (i % bits_per_word));
            }

            auto flip(std::size_t i) -> void
            {
                _words[i / bits_per_word] ^= Word{1} << (i % bits_per_word);
            }

            auto clear() -> void
            {
                for (auto & w : _words)
                    w = 0;
            }

            auto count() const -> std::size_t
            {
                std::size_t result = 0;
                for (auto w : _words)
                    result += std::popcount(w);
                return result;
            }

            auto empty() const -> bool
            {
                for (auto w : _words)
                    if (w)
                        return false;
                return true;
            }

            /// popcount(this & other); rows must have equal length.
            auto intersect_count(const BitRow & other) const -> std::size_t
            {
                std::size_t result = 0;
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    result += std::popcount(_words[i] & other._words[i]);
                return result;
            }

            /// popcount(this & a & b).
            auto intersect_count(const BitRow & a, const BitRow & b) const -> std::size_t
            {
                std::size_t result = 0;
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    result += std::popcount(_words[i] & a._words[i] & b._words[i]);
                return result;
            }

            auto operator&= (const BitRow & other) -> BitRow &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            auto operator|= (const BitRow & other) -> BitRow &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            auto subtract(const BitRow & other) -> BitRow &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            template <typename F_>
            auto for_each(F_ && f) const -> void
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i) {
                    Word w = _words[i];
                    while (w) {
                        int b = std::countr_zero(w);
                        f(i * bits_per_word + b);
                        w &= w - 1;
                    }
                }
            }

            auto members() const -> std::vector<int>
            {
                std::vector<int> result;
                for_each([&] (std::size_t v) { result.push_back(int(v)); });
                return result;
            }

            friend auto operator== (const BitRow &, const BitRow &) -> bool = default;

        private:
            std::size_t _size = 0;
            std::vector<Word> _words;
    };
}
