#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace rulelist {

// Fixed-width bit sequence over the N training samples. The universal carrier of
// "which samples" for captures, labels, and masks. Stored in 64-bit blocks; unused
// bits of the last block are kept zero so popcounts over whole blocks are exact.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(int nbits, bool value = false)
        : nbits_(nbits), words_((nbits + 63) / 64, value ? ~std::uint64_t{0} : 0) {
        assert(nbits >= 0);
        mask_tail();
    }

    int size() const { return nbits_; }

    bool test(int i) const {
        assert(i >= 0 && i < nbits_);
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
    }

    void set(int i, bool value = true) {
        assert(i >= 0 && i < nbits_);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[static_cast<std::size_t>(i) >> 6] |= mask;
        else
            words_[static_cast<std::size_t>(i) >> 6] &= ~mask;
    }

    int count() const {
        int total = 0;
        for (std::uint64_t w : words_) total += std::popcount(w);
        return total;
    }

    bool operator==(const BitVector& other) const {
        return nbits_ == other.nbits_ && words_ == other.words_;
    }

    bool none() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    // Pointwise ops; all operands must share one length. Writing into *this is allowed
    // when *this already has the right size.
    void assign_and(const BitVector& a, const BitVector& b) {
        bind(a, b);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] & b.words_[i];
    }

    void assign_andnot(const BitVector& a, const BitVector& b) {
        bind(a, b);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] & ~b.words_[i];
    }

    void assign_or(const BitVector& a, const BitVector& b) {
        bind(a, b);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] | b.words_[i];
    }

    // Fused counts: popcount of the combination without materializing it.
    friend int and_count(const BitVector& a, const BitVector& b) {
        assert(a.nbits_ == b.nbits_);
        int total = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            total += std::popcount(a.words_[i] & b.words_[i]);
        return total;
    }

    friend int andnot_count(const BitVector& a, const BitVector& b) {
        assert(a.nbits_ == b.nbits_);
        int total = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            total += std::popcount(a.words_[i] & ~b.words_[i]);
        return total;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void bind(const BitVector& a, const BitVector& b) {
        assert(a.nbits_ == b.nbits_);
        if (nbits_ != a.nbits_) {
            nbits_ = a.nbits_;
            words_.resize(a.words_.size());
        }
        // andnot/or of tail-masked operands keeps the tail zero, no re-mask needed
    }

    void mask_tail() {
        if (nbits_ & 63) words_.back() &= (~std::uint64_t{0}) >> (64 - (nbits_ & 63));
    }

    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

inline BitVector bit_and(const BitVector& a, const BitVector& b) {
    BitVector out;
    out.assign_and(a, b);
    return out;
}

inline BitVector bit_andnot(const BitVector& a, const BitVector& b) {
    BitVector out;
    out.assign_andnot(a, b);
    return out;
}

inline BitVector bit_or(const BitVector& a, const BitVector& b) {
    BitVector out;
    out.assign_or(a, b);
    return out;
}

} // namespace rulelist
