#ifndef UNARY_TESTS_SUPPORT_HPP
#define UNARY_TESTS_SUPPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "unary/automaton.hpp"
#include "unary/oracle.hpp"

namespace unary::test {

inline Bits B(std::string_view s) { return Bits::from_string(s); }

inline ChrobakNF cycle(std::string_view bits) { return ChrobakNF::parse("", {bits}); }

inline ChrobakNF evens() { return cycle("10"); }
inline ChrobakNF odds() { return cycle("01"); }
inline ChrobakNF all_words() { return cycle("1"); }
inline ChrobakNF multiples(std::size_t k) {
    Bits b(k);
    b.set(0);
    return ChrobakNF(Bits{}, {b});
}

/// Path NFA on n + 1 states accepting exactly the length n.
inline UnaryNfa single_length(std::size_t n) {
    std::vector<std::pair<State, State>> edges;
    for (State i = 0; i < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return UnaryNfa::from_edges(n + 1, {0}, {static_cast<State>(n)}, edges);
}

/// Acceptance bits from the subset-trajectory oracle, extended to `upto`.
template <typename A>
Bits oracle_window(const A& a, std::size_t upto) {
    const TrajectoryResult t = oracle_bits(a);
    Bits out(upto);
    for (std::size_t l = 0; l < upto; ++l) {
        out.set(l, t.accepts(l));
    }
    return out;
}

/// Exact language equality by the oracle.
template <typename A, typename B2>
bool oracle_equal(const A& a, const B2& b) {
    return oracle_relation(Relation::Equal, a, b).holds;
}

}  // namespace unary::test

#endif  // UNARY_TESTS_SUPPORT_HPP
