#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace homdens {

// Fixed-width bit rows used for adjacency and vertex sets. Kept deliberately
// small: the counting engines work on raw word spans to avoid allocation in
// inner loops.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    static Bitset all(int nbits) {
        Bitset b(nbits);
        for (int i = 0; i < nbits; ++i) b.set(i);
        return b;
    }

    int bits() const { return nbits_; }
    size_t word_count() const { return words_.size(); }
    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    void flip(int i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    Bitset& operator&=(std::span<const uint64_t> other) {
        for (size_t w = 0; w < words_.size(); ++w) words_[w] &= other[w];
        return *this;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int b = std::countr_zero(w);
                f(static_cast<int>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    int nbits_ = 0;
    std::vector<uint64_t> words_;
};

inline int popcount_and(std::span<const uint64_t> a, std::span<const uint64_t> b) {
    int c = 0;
    for (size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

}  // namespace homdens
