#include "tcbga/mask.hpp"

#include <algorithm>
#include <stdexcept>

#include "tcbga/random.hpp"

namespace tcbga {

Mask Mask::from_string(std::string_view bits) {
    Mask m(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            m.set(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("mask string may contain only '0' and '1'");
        }
    }
    return m;
}

Mask Mask::all(std::size_t n_bits) {
    Mask m(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) m.set(i);
    return m;
}

Mask Mask::from_indices(std::size_t n_bits, const std::vector<std::size_t>& indices) {
    Mask m(n_bits);
    for (auto i : indices) {
        if (i >= n_bits) throw std::out_of_range("mask index out of range");
        m.set(i);
    }
    return m;
}

std::size_t Mask::count_prefix(std::size_t end) const noexcept {
    if (end > size_) end = size_;
    std::size_t c = 0;
    const std::size_t full = end >> 6;
    for (std::size_t w = 0; w < full; ++w) c += static_cast<std::size_t>(std::popcount(words_[w]));
    if (const std::size_t rem = end & 63; rem != 0) {
        c += static_cast<std::size_t>(std::popcount(words_[full] & ((1ULL << rem) - 1)));
    }
    return c;
}

std::vector<std::size_t> Mask::set_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

std::vector<std::size_t> Mask::clear_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size_; ++i)
        if (!test(i)) out.push_back(i);
    return out;
}

std::string Mask::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (test(i)) s[i] = '1';
    return s;
}

bool lexicographic_less(const Mask& a, const Mask& b) noexcept {
    const std::size_t n = std::min(a.size_, b.size_);
    for (std::size_t i = 0; i < n; ++i) {
        const bool x = a.test(i);
        const bool y = b.test(i);
        if (x != y) return !x;
    }
    return a.size_ < b.size_;
}

std::size_t MaskHash::operator()(const Mask& m) const noexcept {
    std::uint64_t h = splitmix64(m.size());
    for (auto w : m.words()) h = splitmix64(h ^ w);
    return static_cast<std::size_t>(h);
}

} // namespace tcbga
