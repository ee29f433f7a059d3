#ifndef UNARY_BENCH_HPP
#define UNARY_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unary/automaton.hpp"
#include "unary/cnf.hpp"

namespace unary {

using Rng = std::mt19937_64;

/// Random unambiguous Chrobak automaton with at most `max_states` states.
/// Cycle lengths are distinct multiples of a common factor f; every residue
/// mod f is owned by at most one cycle, and a cycle accepts only positions
/// in residues it owns. The result is checked with ambiguity_chrobak and
/// resampled on failure.
ChrobakNF random_ufa(Rng& rng, std::size_t max_states);

/// Random (generally ambiguous) Chrobak automaton with at most
/// `max_states` states and cycle lengths up to `max_cycle`.
ChrobakNF random_chrobak(Rng& rng, std::size_t max_states, std::size_t max_cycle = 8);

/// Random graph NFA on n states with edge probability `density`.
UnaryNfa random_nfa(Rng& rng, std::size_t n, double density = 0.2);

/// Random CNF with distinct clauses of 1..3 literals over distinct variables,
/// filtered to the 3-occur form.
CnfInstance random_three_occur_cnf(Rng& rng, std::size_t max_vars, std::size_t max_clauses);

struct BenchRow {
    std::string case_name;
    std::string algorithm;
    std::size_t n_in = 0;
    std::size_t n_out = 0;
    double time_ms = 0;
    std::string verdict;
};

std::vector<std::string> suite_names();

/// Runs every case of `suite` on up to `jobs` threads. Rows are ordered by
/// case name. Throws std::invalid_argument for an unknown suite.
std::vector<BenchRow> run_suite(const std::string& suite, std::size_t jobs,
                                std::uint64_t seed = 1);

/// CSV with header case,algorithm,n_in,n_out,time_ms,verdict. With
/// `with_time` false every time is printed as 0 so reruns are byte-identical.
std::string to_csv(const std::vector<BenchRow>& rows, bool with_time = true);

/// Verdicts reported when a size bound holds or fails.
inline constexpr const char* verdict_ok = "ok";
inline constexpr const char* verdict_bound_violated = "bound-violated";

/// log2 of n^(log2 n + 10), the complement size bound checked by the
/// complement-growth suite.
double complement_bound_log2(std::size_t n);

}  // namespace unary

#endif  // UNARY_BENCH_HPP
