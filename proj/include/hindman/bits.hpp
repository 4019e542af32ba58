#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace hindman {

// Fixed-width bitset over [0, size) used for all windowed set evaluation.
// Kept deliberately small: just the operations the family/search layers need.
class bits {
public:
    bits() = default;
    explicit bits(std::uint64_t size) : size_(size), w_((size + 63) / 64, 0) {}

    static bits full(std::uint64_t size) {
        bits b(size);
        for (auto& w : b.w_) w = ~std::uint64_t{0};
        b.mask_tail();
        return b;
    }

    std::uint64_t size() const { return size_; }

    void set(std::uint64_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(std::uint64_t i) const {
        return i < size_ && (w_[i >> 6] >> (i & 63)) & 1;
    }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }

    std::optional<std::uint64_t> max_set() const {
        for (std::size_t i = w_.size(); i-- > 0;)
            if (w_[i]) return i * 64 + (63 - std::countl_zero(w_[i]));
        return std::nullopt;
    }

    std::optional<std::uint64_t> min_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
        return std::nullopt;
    }

    // First element of *this not in other, if any.
    std::optional<std::uint64_t> first_not_in(const bits& other) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i] & ~other.w_[i];
            if (w) return i * 64 + std::countr_zero(w);
        }
        return std::nullopt;
    }

    bool subset_of(const bits& other) const { return !first_not_in(other).has_value(); }

    void and_with(const bits& other) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= other.w_[i];
    }
    void or_with(const bits& other) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= other.w_[i];
    }

    // this := this | (this >> n), i.e. add every element m with m+n present.
    void or_with_self_shifted_down(std::uint64_t n) { or_with(shifted_down(n, size_)); }

    // this := this | (this << n) restricted to [0,size): add m+n for present m.
    void or_with_self_shifted_up(std::uint64_t n) {
        if (n >= size_) return;
        bits up(size_);
        std::uint64_t wsh = n >> 6, bsh = n & 63;
        for (std::size_t i = w_.size(); i-- > 0;) {
            std::uint64_t v = (i >= wsh) ? w_[i - wsh] << bsh : 0;
            if (bsh && i >= wsh + 1) v |= w_[i - wsh - 1] >> (64 - bsh);
            up.w_[i] = v;
        }
        up.mask_tail();
        or_with(up);
    }

    // Window [n, n+len) of this bitset as a new bits of the given length
    // (i.e. the set {m | m+n in this} restricted to [0,len)).
    bits shifted_down(std::uint64_t n, std::uint64_t len) const {
        bits out(len);
        std::uint64_t wsh = n >> 6, bsh = n & 63;
        for (std::size_t i = 0; i < out.w_.size(); ++i) {
            std::uint64_t v = 0;
            if (i + wsh < w_.size()) v = w_[i + wsh] >> bsh;
            if (bsh && i + wsh + 1 < w_.size()) v |= w_[i + wsh + 1] << (64 - bsh);
            out.w_[i] = v;
        }
        out.mask_tail();
        return out;
    }

    friend bits and_of(const bits& a, const bits& b) {
        bits out = a;
        out.and_with(b);
        return out;
    }

    // Visit set bits in ascending order; fn returns true to stop early.
    template <class Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t v = w_[i];
            while (v) {
                if (fn(i * 64 + std::countr_zero(v))) return;
                v &= v - 1;
            }
        }
    }

    bool operator==(const bits& other) const { return size_ == other.size_ && w_ == other.w_; }

    const std::vector<std::uint64_t>& words() const { return w_; }

    struct hasher {
        std::size_t operator()(const bits& b) const {
            std::uint64_t h = 0x9e3779b97f4a7c15ull ^ b.size_;
            for (std::uint64_t w : b.w_) {
                h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            }
            return static_cast<std::size_t>(h);
        }
    };

private:
    void mask_tail() {
        std::uint64_t r = size_ & 63;
        if (r && !w_.empty()) w_.back() &= (std::uint64_t{1} << r) - 1;
    }

    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace hindman
