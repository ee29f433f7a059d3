#ifndef UNARY_BITS_HPP
#define UNARY_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace unary {

/// Packed bit sequence. Bit i is the acceptance bit of the word of length i
/// (little-endian by word length); `to_string` prints bit 0 first.
class Bits {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bits() = default;
    explicit Bits(std::size_t size, bool value = false);

    /// Parses a string of '0'/'1' characters; throws std::invalid_argument otherwise.
    static Bits from_string(std::string_view text);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool operator[](std::size_t i) const noexcept {
        return (words_[i / word_bits] >> (i % word_bits)) & 1U;
    }
    bool test(std::size_t i) const;

    void set(std::size_t i, bool value = true) noexcept {
        const word_type mask = word_type{1} << (i % word_bits);
        if (value) {
            words_[i / word_bits] |= mask;
        } else {
            words_[i / word_bits] &= ~mask;
        }
    }

    void push_back(bool value);
    void resize(std::size_t size, bool value = false);

    std::size_t count() const noexcept;
    bool any() const noexcept;
    bool none() const noexcept { return !any(); }
    bool all() const noexcept;

    /// Bitwise OR with a sequence of the same size.
    Bits& operator|=(const Bits& other);
    Bits& operator&=(const Bits& other);
    Bits operator~() const;

    /// Rotation towards lower indices: result[i] = (*this)[(i + by) % size].
    Bits rotated_left(std::size_t by) const;

    std::string to_string() const;

    std::size_t hash() const noexcept;

    friend bool operator==(const Bits& a, const Bits& b) noexcept {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    void clear_tail() noexcept;

    std::vector<word_type> words_;
    std::size_t size_ = 0;
};

inline Bits operator|(Bits a, const Bits& b) { return a |= b; }
inline Bits operator&(Bits a, const Bits& b) { return a &= b; }

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept { return b.hash(); }
};

}  // namespace unary

#endif  // UNARY_BITS_HPP
