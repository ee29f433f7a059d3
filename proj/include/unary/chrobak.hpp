#ifndef UNARY_CHROBAK_HPP
#define UNARY_CHROBAK_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "unary/automaton.hpp"

namespace unary {

/// Strongly connected components of a unary NFA together with the period
/// (gcd of closed-walk lengths) of every nontrivial component.
struct SccSummary {
    std::vector<std::size_t> component_of;            // state -> component id
    std::vector<std::vector<State>> components;       // component id -> states
    std::vector<std::optional<std::size_t>> period_of;  // empty for trivial components
};

SccSummary scc_summary(const UnaryNfa& a);

inline constexpr std::size_t default_chrobak_guard = 1'000'000;

/// Language-equivalent Chrobak form. The stem covers lengths below n*n;
/// one cycle is emitted per distinct component period, falling back to a
/// single cycle of length lcm(periods) when those do not cover every
/// accepting residue. Throws GuardExceeded when that lcm exceeds `guard`.
ChrobakNF nfa_to_chrobak(const UnaryNfa& a, std::size_t guard = default_chrobak_guard);

/// Moves the cycle entry one step later: appends the disjunction of the
/// entry bits to the stem and rotates every cycle left by one.
ChrobakNF extend_stem(const ChrobakNF& c);
ChrobakNF extend_stem(const ChrobakNF& c, std::size_t target_length);

std::pair<ChrobakNF, ChrobakNF> equalize_stems(const ChrobakNF& c1, const ChrobakNF& c2);

/// Merges equal-length cycles (into the first of that length) and drops
/// all-zero cycles. Idempotent.
ChrobakNF normalize(const ChrobakNF& c);

/// Single-cycle form with the lcm of all cycle lengths as cycle length.
ChrobakNF determinize(const ChrobakNF& c, std::size_t guard = default_chrobak_guard);

/// lcm of all cycle lengths (1 when there are none).
Natural cycle_lcm(const ChrobakNF& c);

}  // namespace unary

#endif  // UNARY_CHROBAK_HPP
