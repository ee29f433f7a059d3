#include "unary/numtheory.hpp"

#include <limits>
#include <stdexcept>

namespace unary {

namespace {

// Extended Euclid on signed values: returns g and sets x with a*x ≡ g (mod b).
Natural ext_gcd(const Natural& a, const Natural& b, Natural& x) {
    Natural old_r = a, r = b;
    Natural old_s = 1, s = 0;
    while (r != 0) {
        Natural q = old_r / r;
        Natural t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    x = old_s;
    return old_r;
}

Natural mod_floor(const Natural& a, const Natural& m) {
    Natural r = a % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

}  // namespace

ResidueClass::ResidueClass(Natural m, Natural r) : modulus(std::move(m)), residue(std::move(r)) {
    if (modulus < 1) {
        throw std::invalid_argument("residue class modulus must be >= 1");
    }
    residue = mod_floor(residue, modulus);
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

PrimeBasis first_primes_ge(std::size_t count, std::uint64_t lower) {
    PrimeBasis basis;
    basis.lower_bound = lower;
    basis.primes.reserve(count);
    for (std::uint64_t c = lower < 2 ? 2 : lower; basis.primes.size() < count; ++c) {
        if (is_prime(c)) {
            basis.primes.push_back(c);
        }
    }
    return basis;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) {
        return out;
    }
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) {
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        out.emplace_back(n, 1);
    }
    return out;
}

std::optional<ResidueClass> crt_solve(std::span<const ResidueClass> classes) {
    if (classes.empty()) {
        throw std::invalid_argument("crt_solve needs at least one class");
    }
    Natural m = classes.front().modulus;
    Natural a = classes.front().residue;
    for (std::size_t i = 1; i < classes.size(); ++i) {
        const Natural& m2 = classes[i].modulus;
        const Natural& a2 = classes[i].residue;
        Natural inv;
        const Natural g = ext_gcd(m, m2, inv);
        const Natural diff = a2 - a;
        if (diff % g != 0) {
            return std::nullopt;
        }
        const Natural step = m2 / g;
        const Natural t = mod_floor((diff / g) * inv, step);
        a = a + m * t;
        m = m * step;
        a = mod_floor(a, m);
    }
    return ResidueClass(m, a);
}

Natural gcd(const Natural& a, const Natural& b) { return boost::multiprecision::gcd(a, b); }

Natural lcm(const Natural& a, const Natural& b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    return a / gcd(a, b) * b;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::optional<Natural> lcm_guarded(std::span<const Natural> values, const Natural& cap) {
    Natural acc = 1;
    for (const auto& v : values) {
        if (v < 1) {
            throw std::invalid_argument("lcm_guarded values must be >= 1");
        }
        acc = lcm(acc, v);
        if (acc > cap) {
            return std::nullopt;
        }
    }
    return acc;
}

std::optional<std::uint64_t> lcm_guarded(std::span<const std::uint64_t> values,
                                         std::uint64_t cap) {
    std::vector<Natural> big(values.begin(), values.end());
    auto r = lcm_guarded(std::span<const Natural>(big), Natural(cap));
    if (!r) {
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(*r);
}

unsigned ceil_log2(const Natural& n) {
    if (n <= 1) {
        return 0;
    }
    const Natural m = n - 1;
    return static_cast<unsigned>(boost::multiprecision::msb(m)) + 1;
}

unsigned floor_log2(std::uint64_t n) noexcept {
    unsigned r = 0;
    while (n > 1) {
        n >>= 1;
        ++r;
    }
    return r;
}

std::optional<std::size_t> to_size(const Natural& n) {
    if (n < 0 || n > Natural(std::numeric_limits<std::size_t>::max())) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(n);
}

std::string to_decimal(const Natural& n) { return n.str(); }

Natural parse_natural(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("not a decimal natural: " + text);
        }
    }
    return Natural(text);
}

}  // namespace unary
