#ifndef UNARY_REGOPS_HPP
#define UNARY_REGOPS_HPP

#include <chrono>
#include <cstddef>
#include <variant>
#include <vector>

#include "unary/automaton.hpp"

namespace unary {

/// A node (d, k) of the complement recursion: word offsets t ≡ k (mod d)
/// past the stem, at recursion depth `depth`.
struct ResidueNode {
    Natural d{1};
    Natural k{0};
    std::size_t depth = 0;
};

struct OpReport {
    std::variant<ChrobakNF, UnaryNfa> output;
    std::vector<std::size_t> input_sizes;
    std::size_t output_size = 0;
    std::chrono::nanoseconds elapsed{0};
};

std::size_t state_count(const ChrobakNF& c);
std::size_t state_count(const UnaryNfa& a);

/// Runs `op` and records sizes and wall time.
template <typename Op, typename... Inputs>
OpReport measure(Op&& op, const Inputs&... inputs) {
    const auto start = std::chrono::steady_clock::now();
    auto out = op(inputs...);
    const auto stop = std::chrono::steady_clock::now();
    OpReport report;
    report.input_sizes = {state_count(inputs)...};
    report.output_size = state_count(out);
    report.output = std::move(out);
    report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start);
    return report;
}

inline constexpr std::size_t default_complement_guard = 10'000'000;

/// Complement of an unambiguous Chrobak automaton. The stem is flipped and
/// the cycle part is complemented by residue-class descent from (1, 0):
/// a class fully accepted by one cycle is dropped, a class no cycle touches
/// becomes a cycle of length d accepting residue k, and otherwise the
/// shortest partially accepting cycle C refines the class modulo
/// lcm(d, |C|). Equal-length output cycles are merged.
///
/// Throws AmbiguousInput for ambiguous input, GuardExceeded when the output
/// would hold more than `guard` cycle states, and RecursionOverflow when the
/// descent goes deeper than ceil(log2 n) + 2.
ChrobakNF complement_ufa(const ChrobakNF& c, std::size_t guard = default_complement_guard);

/// Product automaton over reachable state pairs.
UnaryNfa intersect(const UnaryNfa& a, const UnaryNfa& b);
/// Product on Chrobak form: stems are equalized, cycle pairs are combined
/// into cycles of length lcm. Throws GuardExceeded past `guard` cycle states.
ChrobakNF intersect(const ChrobakNF& a, const ChrobakNF& b,
                    std::size_t guard = default_complement_guard);

/// Side-by-side union; |out| = |a| + |b|.
UnaryNfa disjoint_union(const UnaryNfa& a, const UnaryNfa& b);
/// Chrobak form of the same: equalized stems or-ed, cycle lists joined.
ChrobakNF disjoint_union(const ChrobakNF& a, const ChrobakNF& b);

/// L1 ∪ (L2 − L1), unambiguous when both inputs are.
ChrobakNF union_ufa(const ChrobakNF& c1, const ChrobakNF& c2,
                    std::size_t guard = default_complement_guard);
/// (L1 − L2) ∪ (L2 − L1), unambiguous when both inputs are.
ChrobakNF symdiff_ufa(const ChrobakNF& c1, const ChrobakNF& c2,
                      std::size_t guard = default_complement_guard);

/// Minimal DFA-shaped form of L(a)*.
ChrobakNF star(const UnaryNfa& a);

/// Concatenation on |a| + |b| states.
UnaryNfa concat_nfa(const UnaryNfa& a, const UnaryNfa& b);

/// Exact concatenation by boolean convolution of membership bits, as a
/// minimal DFA-shaped Chrobak form. The convolution is periodic with period
/// P = lcm(all cycle lengths) from s1 + s2 + P on. Throws GuardExceeded when
/// the window s1 + s2 + 2P + 2 exceeds `guard`.
ChrobakNF concat_via_bits(const ChrobakNF& c1, const ChrobakNF& c2,
                          std::size_t guard = default_complement_guard);

/// Intersection for inputs where, modulo M, every residue class of cycle
/// positions has accepting states in at most one cycle. Output cycle E_l
/// has length lcm(|A_l|, |B_l|) and accepts position t iff t ≡ l (mod M)
/// and both A_l and B_l accept there. M must divide every cycle length.
/// Throws StructureViolation otherwise.
ChrobakNF structured_intersection(const ChrobakNF& c1, const ChrobakNF& c2, std::size_t modulus);

/// Minimal (stem, single cycle) form of an eventually periodic bit sequence
/// known to repeat with period `period` from `from` on. `bits` must cover
/// [0, from + period).
ChrobakNF dfa_from_bits(const Bits& bits, std::size_t from, std::size_t period);

}  // namespace unary

#endif  // UNARY_REGOPS_HPP
