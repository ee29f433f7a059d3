#ifndef UNARY_NUMTHEORY_HPP
#define UNARY_NUMTHEORY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unary {

/// Arbitrary-precision natural number. Used for every modulus, lcm, CRT
/// class and witness length.
using Natural = boost::multiprecision::cpp_int;

/// x ≡ residue (mod modulus), with 0 <= residue < modulus.
struct ResidueClass {
    Natural modulus{1};
    Natural residue{0};

    ResidueClass() = default;
    /// Reduces `residue` into range; throws std::invalid_argument if modulus < 1.
    ResidueClass(Natural modulus, Natural residue);

    bool contains(const Natural& x) const { return x % modulus == residue; }

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// Consecutive primes starting at the first prime >= lower_bound.
struct PrimeBasis {
    std::vector<std::uint64_t> primes;
    std::uint64_t lower_bound = 0;

    std::size_t count() const noexcept { return primes.size(); }
};

bool is_prime(std::uint64_t n) noexcept;

/// The first `count` primes >= lower.
PrimeBasis first_primes_ge(std::size_t count, std::uint64_t lower);

/// All primes <= n, increasing.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Prime factorization by trial division; (prime, exponent) pairs, increasing.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Combines residue classes into the unique class modulo the lcm of the
/// moduli, or nullopt when two classes disagree modulo the gcd of their
/// moduli. Moduli need not be coprime. Precondition: non-empty input.
std::optional<ResidueClass> crt_solve(std::span<const ResidueClass> classes);

/// lcm of `values` (all >= 1), or nullopt once the running lcm exceeds `cap`.
std::optional<Natural> lcm_guarded(std::span<const Natural> values, const Natural& cap);
std::optional<std::uint64_t> lcm_guarded(std::span<const std::uint64_t> values,
                                         std::uint64_t cap);

Natural gcd(const Natural& a, const Natural& b);
Natural lcm(const Natural& a, const Natural& b);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// ceil(log2(n)) for n >= 1; 0 for n <= 1.
unsigned ceil_log2(const Natural& n);
/// floor(log2(n)) for n >= 1; 0 for n == 0.
unsigned floor_log2(std::uint64_t n) noexcept;

/// Checked narrowing to size_t.
std::optional<std::size_t> to_size(const Natural& n);

std::string to_decimal(const Natural& n);
/// Throws std::invalid_argument on anything but a decimal natural.
Natural parse_natural(const std::string& text);

}  // namespace unary

#endif  // UNARY_NUMTHEORY_HPP
