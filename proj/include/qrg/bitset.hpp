#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qrg {

// Fixed-universe dynamic bitset over 64-bit words.  std::vector<bool> has no
// word access and std::bitset needs a compile-time size, so we roll our own;
// the word representation makes unions (used heavily by product sets) cheap.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t universe() const { return n_; }

    bool test(std::size_t i) const {
        assert(i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1ULL;
    }
    void set(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] |= 1ULL << (i & 63);
    }
    void reset(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] &= ~(1ULL << (i & 63));
    }

    void clear() { for (auto& w : w_) w = 0; }

    void set_all() {
        for (auto& w : w_) w = ~0ULL;
        trim();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }
    bool all() const { return count() == n_; }

    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

    // Calls f(index) for every set bit, in increasing index order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

    // First set index, or universe() when empty.
    std::size_t first() const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi)
            if (w_[wi]) return wi * 64 + static_cast<unsigned>(__builtin_ctzll(w_[wi]));
        return n_;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL ^ n_;
        for (auto w : w_) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        return h;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (1ULL << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace qrg
