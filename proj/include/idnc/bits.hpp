#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace idnc {

// Fixed-size bitset sized at construction; just enough for adjacency rows
// and candidate sets during clique search.
class Bits {
  public:
    Bits() = default;
    explicit Bits(int size) : size_(size), words_((size + 63) / 64, 0) {}

    int size() const { return size_; }

    void set(int i) { words_[i >> 6] |= (1ull << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(1ull << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count() const {
        int total = 0;
        for (auto w : words_) total += std::popcount(w);
        return total;
    }

    Bits& operator&=(const Bits& other) {
        for (size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }
    Bits& operator|=(const Bits& other) {
        for (size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
        return *this;
    }

    friend Bits operator&(Bits lhs, const Bits& rhs) { return lhs &= rhs; }

    bool intersects(const Bits& other) const {
        for (size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & other.words_[k]) return true;
        return false;
    }

    int intersect_count(const Bits& other) const {
        int total = 0;
        for (size_t k = 0; k < words_.size(); ++k)
            total += std::popcount(words_[k] & other.words_[k]);
        return total;
    }

    // Invokes fn(index) for every set bit in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                const int bit = std::countr_zero(w);
                fn(static_cast<int>(k * 64 + bit));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> result;
        result.reserve(count());
        for_each([&](int i) { result.push_back(i); });
        return result;
    }

    bool operator==(const Bits& other) const = default;

  private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace idnc
