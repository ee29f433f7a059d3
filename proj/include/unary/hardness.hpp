#ifndef UNARY_HARDNESS_HPP
#define UNARY_HARDNESS_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "unary/automaton.hpp"
#include "unary/cnf.hpp"

namespace unary {

/// Splits every variable with more than three occurrences: its k-th
/// occurrence becomes a fresh variable y_k, and the clauses
/// (¬y_i ∨ y_{i+1 mod d}) force all copies equal. Fresh variables are
/// numbered after the existing ones.
CnfInstance to_three_occur(const CnfInstance& c);

struct Prop1Meta {
    std::size_t r = 1;  // clauses per prime
    std::size_t s = 0;  // number of primes
    PrimeBasis primes;
    /// Per prime: its clause indices and the distinct variables (1-based) in
    /// assignment order; bit t of an assignment index is variable t.
    std::vector<std::vector<std::size_t>> clauses_of;
    std::vector<std::vector<int>> assignment_order;
    /// Prime pairs (i, j), i < j, whose groups share a variable.
    std::vector<std::pair<std::size_t, std::size_t>> linked;
};

/// Cycle of length p_i per clause group (state k rejects iff k indexes a
/// satisfying assignment of the group) and one of length p_i * p_j per
/// linked pair (state k accepts iff the two induced assignments disagree).
/// Universal iff `c` is unsatisfiable. Throws NotThreeOccur.
std::pair<ChrobakNF, Prop1Meta> gen_universality_nfa(const CnfInstance& c);

struct EqualityClause {
    int x = 0;  // renamed variable in group `group_x`
    int y = 0;
    std::size_t group_x = 0;
    std::size_t group_y = 0;
};

struct FormulaInstanceMeta {
    std::size_t m = 0;        // original clauses
    std::size_t m_prime = 0;  // plus equality clauses
    std::size_t group_size = 1;
    std::vector<std::vector<std::size_t>> groups;  // clause indices per group
    /// renamed[v] = (original variable, group) for renamed variable v >= 1.
    std::vector<std::pair<int, std::size_t>> renamed;
    /// Clauses after renaming, in group order (equality clauses excluded).
    std::vector<std::vector<int>> clauses;
    std::vector<EqualityClause> equalities;
    /// Distinct renamed variables of each group, in assignment order.
    std::vector<std::vector<int>> group_vars;
    PrimeBasis primes;
    std::size_t block_width = 2;  // 2(m' + 1)
};

struct FormulaInstance {
    ChrobakNF h1;
    ChrobakNF h2;
    ChrobakNF k;
    FormulaInstanceMeta meta;
};

/// Two unambiguous automata H1, H2 and a finite K = {0, ..., 2m'-1} such
/// that (H1 ∩ H2) · K is universal iff `c` is unsatisfiable. Throws
/// NotThreeOccur.
FormulaInstance gen_formula_instance(const CnfInstance& c);

struct BlowupInstanceMeta {
    std::size_t m = 0;
    std::size_t k = 0;
    PrimeBasis primes;
    ResidueClass expected_complement;
};

struct BlowupInstance {
    ChrobakNF u;
    ChrobakNF h;
    BlowupInstanceMeta meta;
};

/// k = max(1, floor(m / log2 m)) cycles of length p_l (k+3) plus one of
/// length k+3; H = {0, ..., k-1}. The complement of L(U) · H is the single
/// class recorded in the meta. Throws std::invalid_argument for m < 4.
BlowupInstance gen_concat_blowup(std::size_t m);

/// Structured intersection of the two automata of a formula instance.
ChrobakNF gen_intersection_ufa(const ChrobakNF& h1, const ChrobakNF& h2,
                               const FormulaInstanceMeta& meta);

}  // namespace unary

#endif  // UNARY_HARDNESS_HPP
