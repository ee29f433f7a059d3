#ifndef UNARY_ORACLE_HPP
#define UNARY_ORACLE_HPP

// Deliberately naive reference implementations. Every other module is
// tested against these; nothing here shares code paths with the
// constructions it checks.

#include <cstddef>
#include <optional>
#include <vector>

#include "unary/automaton.hpp"
#include "unary/cnf.hpp"

namespace unary {

inline constexpr std::size_t default_oracle_cap = 100'000;

/// Acceptance bits of the reachable-subset trajectory. When exact, the
/// subset after `threshold + period` steps equals the one after `threshold`
/// steps, so bits(l) = bits(l + period) for all l >= threshold.
struct TrajectoryResult {
    Bits bits;  // lengths [0, threshold + period) when exact, else [0, cap)
    std::size_t threshold = 0;
    std::size_t period = 0;
    bool exact = false;

    /// Acceptance of any length, extended periodically. Throws Inexact when
    /// the trajectory is not exact and l is beyond the recorded bits.
    bool accepts(std::size_t l) const;
};

/// Iterates sets of reachable states with Brent's cycle detection. At most
/// `cap` successor steps are taken before giving up (exact = false).
TrajectoryResult oracle_bits(const UnaryNfa& a, std::size_t cap = default_oracle_cap);
/// Runs on chrobak_to_nfa(c).
TrajectoryResult oracle_bits(const ChrobakNF& c, std::size_t cap = default_oracle_cap);

enum class Relation { Subset, Equal, Universal };

inline constexpr std::size_t default_oracle_window = 100'000'000;

/// Pointwise comparison up to max threshold + lcm of periods; the witness is
/// the least failing length. For Universal the second operand is ignored.
/// Throws Inexact if a trajectory is not exact, GuardExceeded if the
/// comparison window exceeds `window_guard`.
RelationVerdict oracle_relation(Relation rel, const TrajectoryResult& a,
                                const TrajectoryResult& b,
                                std::size_t window_guard = default_oracle_window);
RelationVerdict oracle_universal(const TrajectoryResult& a);

template <typename A, typename B>
RelationVerdict oracle_relation(Relation rel, const A& a, const B& b,
                                std::size_t cap = default_oracle_cap) {
    return oracle_relation(rel, oracle_bits(a, cap), oracle_bits(b, cap));
}

/// Single pass universality check: walks the subset trajectory and stops at
/// the first rejected length or once Brent's detector closes the
/// trajectory. Throws Inexact past `cap` steps.
RelationVerdict oracle_universal_scan(const UnaryNfa& a, std::size_t cap);
RelationVerdict oracle_universal_scan(const ChrobakNF& c, std::size_t cap);

inline constexpr std::size_t brute_sat_max_vars = 25;

/// Exhaustive search in lexicographic order (x1 first, false < true).
/// Returns the first model, or nullopt. Throws TooLarge above 25 variables.
std::optional<std::vector<bool>> brute_sat(const CnfInstance& c);

/// Least p >= 1 with bits[l] == bits[l + p] for every in-window l >= threshold,
/// considering only p with threshold + 2p <= bits.size(). Throws
/// NoPeriodInWindow when no such p exists.
std::size_t minimal_period(const Bits& bits, std::size_t threshold);

}  // namespace unary

#endif  // UNARY_ORACLE_HPP
