#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "unary/bench.hpp"
#include "unary/chrobak.hpp"
#include "unary/errors.hpp"
#include "unary/regops.hpp"

using namespace unary;
using namespace unary::test;

namespace {

UnaryNfa nfa(const ChrobakNF& c) { return chrobak_to_nfa(c); }

const UnaryNfa empty_nfa(0, {}, {}, {});

// Membership of the concatenation by direct convolution of oracle bits.
Bits naive_concat(const ChrobakNF& a, const ChrobakNF& b, std::size_t upto) {
    const Bits x = oracle_window(a, upto);
    const Bits y = oracle_window(b, upto);
    Bits out(upto);
    for (std::size_t i = 0; i < upto; ++i) {
        for (std::size_t j = 0; i + j < upto; ++j) {
            if (x[i] && y[j]) {
                out.set(i + j);
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("complement_ufa examples") {
    const ChrobakNF none = complement_ufa(all_words());
    CHECK(none.cycles().empty());
    CHECK(none.stem().none());
    CHECK(complement_ufa(evens()) == odds());
    CHECK(complement_ufa(ChrobakNF::parse("", {"10", "0100"})) == cycle("0001"));
    CHECK(complement_ufa(ChrobakNF{}) == all_words());
    CHECK(complement_ufa(ChrobakNF::parse("01", {})) == ChrobakNF::parse("10", {"1"}));
}

TEST_CASE("complement_ufa rejects ambiguity and respects the guard") {
    CHECK_THROWS_AS(complement_ufa(ChrobakNF::parse("", {"10", "0010"})), AmbiguousInput);
    CHECK_THROWS_AS(complement_ufa(ChrobakNF::parse("", {"100000", "0100000000"}), 5),
                    GuardExceeded);
}

TEST_CASE("complement_ufa is the exact complement of random UFAs") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        const ChrobakNF c = random_ufa(rng, 4 + i % 30);
        const ChrobakNF k = complement_ufa(c);
        INFO("case " << i);
        CHECK(is_unambiguous(k));
        const auto a = oracle_bits(c);
        const auto b = oracle_bits(k);
        const std::size_t window =
            std::max(a.threshold, b.threshold) + 16 * std::max(a.period, b.period);
        bool exact = true;
        for (std::size_t l = 0; l < window; ++l) {
            exact = exact && a.accepts(l) != b.accepts(l);
        }
        CHECK(exact);
        CHECK(oracle_relation(Relation::Equal, complement_ufa(k), c).holds);
    }
}

TEST_CASE("intersect on graphs") {
    CHECK(oracle_equal(intersect(nfa(evens()), nfa(all_words())), evens()));
    CHECK(oracle_equal(intersect(nfa(multiples(2)), nfa(multiples(3))), multiples(6)));
    CHECK(oracle_equal(intersect(nfa(evens()), empty_nfa), ChrobakNF{}));
    const auto out = intersect(nfa(multiples(2)), nfa(multiples(3)));
    CHECK(out.num_states() <= 6);
}

TEST_CASE("intersect on Chrobak form") {
    CHECK(oracle_equal(intersect(multiples(2), multiples(3)), multiples(6)));
    // {1, 2} plus the odd lengths from 3 on, intersected with the odd lengths.
    CHECK(oracle_equal(intersect(ChrobakNF::parse("011", {"10"}), odds()), odds()));
    CHECK(oracle_equal(intersect(evens(), ChrobakNF{}), ChrobakNF{}));
}

TEST_CASE("disjoint_union") {
    const UnaryNfa u = disjoint_union(nfa(evens()), nfa(odds()));
    CHECK(u.num_states() == 4);
    CHECK(oracle_equal(u, all_words()));
    CHECK(oracle_equal(disjoint_union(nfa(evens()), empty_nfa), evens()));
    const UnaryNfa five = nfa(ChrobakNF::parse("01", {"101"}));
    const UnaryNfa seven = nfa(ChrobakNF::parse("1", {"100001"}));
    CHECK(disjoint_union(five, seven).num_states() == 12);
    CHECK(oracle_equal(disjoint_union(ChrobakNF::parse("1", {"01"}), multiples(3)),
                       ChrobakNF::parse("1", {"011101"})));
}

TEST_CASE("union_ufa") {
    CHECK(oracle_equal(union_ufa(evens(), evens()), evens()));
    CHECK(oracle_equal(union_ufa(evens(), odds()), all_words()));
    CHECK(oracle_equal(union_ufa(multiples(4), evens()), evens()));
    CHECK(is_unambiguous(union_ufa(multiples(4), evens())));
}

TEST_CASE("symdiff_ufa") {
    CHECK(oracle_equal(symdiff_ufa(evens(), evens()), ChrobakNF{}));
    CHECK(oracle_equal(symdiff_ufa(evens(), ChrobakNF{}), evens()));
    const ChrobakNF x = symdiff_ufa(evens(), multiples(3));
    CHECK(oracle_window(x, 36) == B("001110001110001110001110001110001110"));
    CHECK(is_unambiguous(x));
}

TEST_CASE("star") {
    const ChrobakNF two = star(single_length(2));
    CHECK(oracle_equal(two, evens()));
    CHECK(two.total_states() <= 5);
    CHECK(star(empty_nfa) == ChrobakNF::parse("1", {}));
    CHECK(oracle_equal(star(single_length(1)), all_words()));
    // {2, 5} generates every length except 1 and 3.
    CHECK(oracle_equal(star(nfa(ChrobakNF::parse("00100100", {}))), ChrobakNF::parse("1010", {"1"})));
}

TEST_CASE("star matches the closure of the oracle bits") {
    Rng rng(5);
    for (int i = 0; i < 150; ++i) {
        const std::size_t n = 1 + i % 16;
        const UnaryNfa a = random_nfa(rng, n, 1.5 / static_cast<double>(n));
        const ChrobakNF s = star(a);
        INFO("case " << i);
        CHECK(s.total_states() <= (n - 1) * (n - 1) + 1);
        const std::size_t upto = 3 * n * n + 20;
        const Bits l = oracle_window(a, upto);
        Bits closure(upto);
        closure.set(0);
        for (std::size_t x = 1; x < upto; ++x) {
            for (std::size_t y = 1; y <= x && !closure[x]; ++y) {
                if (l[y] && closure[x - y]) {
                    closure.set(x);
                }
            }
        }
        CHECK(membership_bits(s, upto) == closure);
    }
}

TEST_CASE("concat_nfa") {
    const UnaryNfa one = single_length(1);
    const UnaryNfa two = concat_nfa(one, one);
    CHECK(two.num_states() == 4);
    CHECK(oracle_equal(two, nfa(ChrobakNF::parse("001", {}))));
    CHECK(oracle_equal(concat_nfa(nfa(ChrobakNF::parse("01", {"110"})), single_length(0)),
                       ChrobakNF::parse("01", {"110"})));
    CHECK(oracle_equal(concat_nfa(nfa(evens()), one), odds()));
    CHECK(oracle_equal(concat_nfa(empty_nfa, nfa(evens())), ChrobakNF{}));
}

TEST_CASE("concat_via_bits") {
    // even + odd is always odd
    CHECK(concat_via_bits(evens(), odds()) == odds());
    CHECK(concat_via_bits(ChrobakNF{}, evens()) == ChrobakNF{});
    CHECK(concat_via_bits(ChrobakNF::parse("01", {}), ChrobakNF::parse("001", {})) ==
          ChrobakNF::parse("0001", {}));
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const ChrobakNF a = random_chrobak(rng, 10, 6);
        const ChrobakNF b = random_chrobak(rng, 10, 6);
        const ChrobakNF c = concat_via_bits(a, b);
        INFO("case " << i);
        CHECK(membership_bits(c, 200) == naive_concat(a, b, 200));
        CHECK(oracle_equal(c, concat_nfa(nfa(a), nfa(b))));
    }
}

TEST_CASE("dfa_from_bits") {
    CHECK(dfa_from_bits(B("0010101010"), 2, 2) == ChrobakNF::parse("0", {"01"}));
    CHECK(dfa_from_bits(B("01000000"), 4, 4) == ChrobakNF::parse("01", {}));
    CHECK(dfa_from_bits(B("111111"), 0, 6) == all_words());
    CHECK(dfa_from_bits(B("0000"), 0, 2) == ChrobakNF{});
}

TEST_CASE("structured_intersection") {
    const ChrobakNF c = cycle("0110");
    CHECK(oracle_equal(structured_intersection(c, c, 4), c));
    // Both cycles accept residue 0 modulo 2.
    CHECK_THROWS_AS(structured_intersection(ChrobakNF::parse("", {"10", "1000"}), evens(), 2),
                    StructureViolation);
    CHECK_THROWS_AS(structured_intersection(cycle("100"), cycle("100"), 2), StructureViolation);
    const ChrobakNF a = ChrobakNF::parse("", {"1000", "010000"});
    const ChrobakNF b = ChrobakNF::parse("", {"1000", "01000100"});
    CHECK(oracle_equal(structured_intersection(a, b, 2), intersect(a, b)));
}

TEST_CASE("measure records sizes") {
    const OpReport r = measure([](const ChrobakNF& a, const ChrobakNF& b) { return intersect(a, b); },
                               multiples(2), multiples(3));
    CHECK(r.input_sizes == std::vector<std::size_t>{2, 3});
    CHECK(r.output_size == 6);
    CHECK(std::holds_alternative<ChrobakNF>(r.output));
}
