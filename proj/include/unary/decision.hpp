#ifndef UNARY_DECISION_HPP
#define UNARY_DECISION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unary/automaton.hpp"

namespace unary {

/// Prime split for the comparison of two Chrobak automata. Every cycle
/// length of either input divides r * q^2 for its host q, where q is a
/// prime of Q or the pseudo entry 1. The q-cycle of a side is the
/// disjunction of the cycles hosted at q or at 1, laid out on r * q^2
/// positions; it is evaluated on demand, never stored.
struct ComparisonBasis {
    std::uint64_t n = 0;
    std::uint64_t threshold = 2;
    std::vector<std::uint64_t> P;
    std::vector<std::uint64_t> Q;
    Natural r{1};
    /// q -> indices of the cycles hosted at q (key 1 for lengths dividing r).
    std::map<std::uint64_t, std::vector<std::size_t>> hosts_first;
    std::map<std::uint64_t, std::vector<std::size_t>> hosts_second;

    /// 1 followed by Q in increasing order.
    std::vector<std::uint64_t> entries() const;
};

/// Builds the basis for the cycle parts of `c1` and `c2`. Throws
/// std::logic_error if some cycle length does not divide r * q^2 for its host.
ComparisonBasis comparison_basis(const ChrobakNF& c1, const ChrobakNF& c2);

/// The q-cycle of one side, materialized (for tests). `first` selects c1.
Bits materialize_qcycle(const ChrobakNF& c, const ComparisonBasis& basis, std::uint64_t q,
                        bool first, std::size_t guard = 1'000'000);

inline constexpr std::uint64_t default_residue_guard = std::uint64_t{1} << 36;
inline constexpr std::size_t witness_scan_budget = 1'000'000;

/// L(c1) ⊆ L(c2) by the prime-basis comparison. Stems are equalized and
/// compared pointwise; then each class s < r passes if some q-cycle of c2
/// accepts the whole class, or if per q-cycle acceptance by c1 implies
/// acceptance by c2. A failing class yields a witness by CRT, which is then
/// lowered to the least separating length of that class. Throws
/// GuardExceeded when r exceeds `guard`.
RelationVerdict nfa_subset(const ChrobakNF& c1, const ChrobakNF& c2,
                           std::uint64_t guard = default_residue_guard);
RelationVerdict nfa_equal(const ChrobakNF& c1, const ChrobakNF& c2,
                          std::uint64_t guard = default_residue_guard);
RelationVerdict nfa_universal(const ChrobakNF& c, std::uint64_t guard = default_residue_guard);

/// Running value of sum_k i_k / j_k as s / p, exactly or modulo primes.
class DensityAccumulator {
public:
    enum class Mode { Exact, Modular };

    /// Modular mode uses the first ceil(5 * sqrt(n)) + 2 primes.
    DensityAccumulator(Mode mode, std::size_t n);

    void add(std::uint64_t accepting, std::uint64_t length);
    bool equals_one() const;

    Mode mode() const noexcept { return mode_; }
    const Natural& numerator() const noexcept { return s_; }
    const Natural& denominator() const noexcept { return p_; }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

private:
    Mode mode_;
    Natural s_{0};
    Natural p_{1};
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> sm_;
    std::vector<std::uint64_t> pm_;
};

using UniversalMode = DensityAccumulator::Mode;

/// Universality of an unambiguous automaton: every stem bit set and the
/// cycle densities sum to 1. Throws AmbiguousInput.
bool ufa_universal(const ChrobakNF& c, UniversalMode mode = UniversalMode::Exact);

/// L(u1) ⊆ L(u2) for unambiguous u2. Lengths below max(s1, s2) are checked
/// directly; every accepting position of a u1 cycle contributes one
/// progression v + w*i, whose membership in u2 is a universality question
/// on the strided automaton. The witness is the least separating length.
/// Throws AmbiguousInput when u2 is ambiguous.
RelationVerdict ufa_inclusion(const ChrobakNF& u1, const ChrobakNF& u2);

/// u2 sampled along v + w*i, i = 0, 1, ...; unambiguous when u2 is.
/// Precondition: v >= stem length of u2.
ChrobakNF strided(const ChrobakNF& u2, const Natural& v, std::uint64_t w);

// ---------------------------------------------------------------------------
// Formulas

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    enum class Kind {
        Name,
        All,
        Empty,
        Complement,
        Star,
        Union,
        Intersection,
        Difference,
        SymDiff,
        Concat,
        Equal,
        NotEqual,
        Subset,
        IsUniversal,
        IsEmpty,
        And,
        Or,
        Not,
    };
    Kind kind;
    std::string name;
    std::vector<Formula> args;
};

/// Parses expressions such as "A ∪ complement(A) = ALL" or
/// "(H1 & H2) . K = ALL". Accepted operators: complement(e), ~e, star(e),
/// e*, ∪ |, ∩ &, - \, Δ ^, · ., = ==, ≠ !=, ⊆ <=, universal(e), empty(e),
/// and boolean and/or/not (also && || !). Throws ParseError.
Formula parse_formula(std::string_view text);

using FormulaValue = std::variant<bool, ChrobakNF>;

struct EvalOptions {
    bool allow_concat = false;
};

/// Bottom-up evaluation through the regular operations and this module's
/// comparisons. Throws ConcatDisallowed for concatenation without the flag,
/// ParseError for unbound names, AmbiguousInput from the operations.
FormulaValue eval_formula(const Formula& f, const std::map<std::string, ChrobakNF>& bindings,
                          EvalOptions options = {});

}  // namespace unary

#endif  // UNARY_DECISION_HPP
