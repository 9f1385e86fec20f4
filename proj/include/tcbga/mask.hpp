#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace tcbga {

/// Fixed-length feature selection mask. Bit i selects feature i (0-based);
/// the string form prints bit 0 first, so "1011" selects features 0, 2, 3.
class Mask {
public:
    Mask() = default;
    explicit Mask(std::size_t n_bits) : size_(n_bits), words_((n_bits + 63) / 64, 0) {}

    static Mask from_string(std::string_view bits);
    static Mask all(std::size_t n_bits);
    static Mask from_indices(std::size_t n_bits, const std::vector<std::size_t>& indices);

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
    void set(std::size_t i, bool value = true) noexcept {
        const std::uint64_t bit = 1ULL << (i & 63);
        if (value) {
            words_[i >> 6] |= bit;
        } else {
            words_[i >> 6] &= ~bit;
        }
    }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= 1ULL << (i & 63); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Number of set bits strictly before position `end`.
    std::size_t count_prefix(std::size_t end) const noexcept;

    std::vector<std::size_t> set_indices() const;
    std::vector<std::size_t> clear_indices() const;

    std::string to_string() const;

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const Mask&, const Mask&) = default;

    /// Lexicographic order of the string form ("0011" < "0101").
    friend bool lexicographic_less(const Mask& a, const Mask& b) noexcept;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct MaskHash {
    std::size_t operator()(const Mask& m) const noexcept;
};

} // namespace tcbga
