#include "unary/bits.hpp"

#include <bit>
#include <functional>
#include <stdexcept>

namespace unary {

Bits::Bits(std::size_t size, bool value)
    : words_((size + word_bits - 1) / word_bits, value ? ~word_type{0} : word_type{0}),
      size_(size) {
    clear_tail();
}

Bits Bits::from_string(std::string_view text) {
    Bits out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            out.set(i);
        } else if (text[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return out;
}

bool Bits::test(std::size_t i) const {
    if (i >= size_) {
        throw std::out_of_range("Bits::test index out of range");
    }
    return (*this)[i];
}

void Bits::push_back(bool value) {
    if (size_ % word_bits == 0) {
        words_.push_back(0);
    }
    ++size_;
    set(size_ - 1, value);
}

void Bits::resize(std::size_t size, bool value) {
    const std::size_t old = size_;
    words_.resize((size + word_bits - 1) / word_bits, 0);
    size_ = size;
    clear_tail();
    if (value) {
        for (std::size_t i = old; i < size; ++i) {
            set(i);
        }
    }
}

std::size_t Bits::count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) {
        n += static_cast<std::size_t>(std::popcount(w));
    }
    return n;
}

bool Bits::any() const noexcept {
    for (auto w : words_) {
        if (w != 0) {
            return true;
        }
    }
    return false;
}

bool Bits::all() const noexcept { return count() == size_; }

Bits& Bits::operator|=(const Bits& other) {
    if (other.size_ != size_) {
        throw std::invalid_argument("Bits::operator|= size mismatch");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] |= other.words_[i];
    }
    return *this;
}

Bits& Bits::operator&=(const Bits& other) {
    if (other.size_ != size_) {
        throw std::invalid_argument("Bits::operator&= size mismatch");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

Bits Bits::operator~() const {
    Bits out = *this;
    for (auto& w : out.words_) {
        w = ~w;
    }
    out.clear_tail();
    return out;
}

Bits Bits::rotated_left(std::size_t by) const {
    Bits out(size_);
    if (size_ == 0) {
        return out;
    }
    by %= size_;
    for (std::size_t i = 0; i < size_; ++i) {
        std::size_t j = i + by;
        if (j >= size_) {
            j -= size_;
        }
        if ((*this)[j]) {
            out.set(i);
        }
    }
    return out;
}

std::string Bits::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if ((*this)[i]) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t Bits::hash() const noexcept {
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) {
        h ^= std::hash<word_type>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

void Bits::clear_tail() noexcept {
    const std::size_t rem = size_ % word_bits;
    if (rem != 0 && !words_.empty()) {
        words_.back() &= (word_type{1} << rem) - 1;
    }
}

}  // namespace unary
