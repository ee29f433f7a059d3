#ifndef UNARY_AUTOMATON_HPP
#define UNARY_AUTOMATON_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "unary/bits.hpp"
#include "unary/numtheory.hpp"

namespace unary {

using State = std::uint32_t;

/// A unary NFA as a directed graph: every edge reads the single letter.
/// Immutable after construction; state sets are kept sorted and unique.
class UnaryNfa {
public:
    UnaryNfa() = default;
    /// `succ` must have exactly `num_states` entries (missing entries are
    /// filled with empty sets when `succ` is shorter). Throws
    /// std::invalid_argument when an id is out of range.
    UnaryNfa(std::size_t num_states, std::vector<State> starts, std::vector<State> accepts,
             std::vector<std::vector<State>> succ);

    /// Builds from an edge list.
    static UnaryNfa from_edges(std::size_t num_states, std::vector<State> starts,
                               std::vector<State> accepts,
                               std::span<const std::pair<State, State>> edges);

    std::size_t num_states() const noexcept { return num_states_; }
    const std::vector<State>& starts() const noexcept { return starts_; }
    const std::vector<State>& accepts() const noexcept { return accepts_; }
    const std::vector<State>& succ(State q) const { return succ_.at(q); }
    const std::vector<std::vector<State>>& successors() const noexcept { return succ_; }
    bool is_accepting(State q) const { return accepting_.test(q); }
    std::size_t num_edges() const noexcept;

    friend bool operator==(const UnaryNfa& a, const UnaryNfa& b) {
        return a.num_states_ == b.num_states_ && a.starts_ == b.starts_ &&
               a.accepts_ == b.accepts_ && a.succ_ == b.succ_;
    }

private:
    std::size_t num_states_ = 0;
    std::vector<State> starts_;
    std::vector<State> accepts_;
    std::vector<std::vector<State>> succ_;
    Bits accepting_;
};

/// Chrobak normal form: a stem of acceptance bits followed by parallel
/// cycles entered after the stem. Word length l < stem().size() is
/// accepted iff stem()[l]; otherwise iff some cycle c has
/// c[(l - stem().size()) % c.size()] set.
///
/// Equal-length and all-zero cycles are allowed here; `normalize` removes
/// them. The empty language is the value with empty stem and no cycles.
class ChrobakNF {
public:
    ChrobakNF() = default;
    /// Throws std::invalid_argument on an empty cycle.
    ChrobakNF(Bits stem, std::vector<Bits> cycles);

    /// Convenience: ChrobakNF::parse("10", {"1", "001"}).
    static ChrobakNF parse(std::string_view stem, std::initializer_list<std::string_view> cycles);

    const Bits& stem() const noexcept { return stem_; }
    const std::vector<Bits>& cycles() const noexcept { return cycles_; }
    std::size_t stem_length() const noexcept { return stem_.size(); }
    std::size_t cycle_states() const noexcept;
    std::size_t total_states() const noexcept { return stem_.size() + cycle_states(); }

    bool accepts(std::uint64_t length) const noexcept;
    bool accepts(const Natural& length) const;

    /// True iff every cycle length is distinct and no cycle is all-zero.
    bool is_normalized() const noexcept;

    friend bool operator==(const ChrobakNF&, const ChrobakNF&) = default;

private:
    Bits stem_;
    std::vector<Bits> cycles_;
};

/// A word length certifying a failed relation, optionally with the residue
/// classes it was assembled from.
struct WitnessLength {
    Natural value;
    std::optional<std::vector<ResidueClass>> derivation;

    /// True iff `value` satisfies every class of the derivation (or there is none).
    bool consistent() const;
};

/// Outcome of a language relation check. The witness is present iff the
/// relation fails; for a subset check it is accepted by the left operand
/// and rejected by the right one.
struct RelationVerdict {
    bool holds = true;
    std::optional<WitnessLength> witness;
};

enum class Ambiguity { Unambiguous, Ambiguous, UnknownBeyondBound };

struct AmbiguityReport {
    Ambiguity verdict = Ambiguity::Unambiguous;
    std::optional<WitnessLength> witness;
    std::optional<std::size_t> bound_used;
};

/// Bit l is set iff the word of length l is accepted, for l < upto.
Bits membership_bits(const UnaryNfa& a, std::size_t upto);
Bits membership_bits(const ChrobakNF& c, std::size_t upto);

/// Graph form of a Chrobak automaton: stem states 0..s-1, then the cycles in
/// order. Without a stem every cycle entry is a start state.
UnaryNfa chrobak_to_nfa(const ChrobakNF& c);

/// Exact ambiguity test on Chrobak form. Accepting offsets a (cycle length p)
/// and b (length q) of distinct cycles collide iff a ≡ b (mod gcd(p, q));
/// the witness is the least colliding word length.
AmbiguityReport ambiguity_chrobak(const ChrobakNF& c);

inline constexpr std::size_t default_ambiguity_steps = 1'000'000;

/// Iterates accepting-run counts capped at 2, one length at a time. A
/// repeated count vector closes the trajectory and makes the verdict exact;
/// otherwise the verdict is UnknownBeyondBound.
AmbiguityReport ambiguity_nfa(const UnaryNfa& a, std::size_t max_steps = default_ambiguity_steps);

bool is_unambiguous(const ChrobakNF& c);

/// Throws AmbiguousInput when `c` is ambiguous.
void require_unambiguous(const ChrobakNF& c, const char* operation);

}  // namespace unary

#endif  // UNARY_AUTOMATON_HPP
