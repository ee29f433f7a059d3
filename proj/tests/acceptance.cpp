// Acceptance run: one pass/fail line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "unary/automaton.hpp"
#include "unary/bench.hpp"
#include "unary/chrobak.hpp"
#include "unary/cnf.hpp"
#include "unary/decision.hpp"
#include "unary/errors.hpp"
#include "unary/hardness.hpp"
#include "unary/io.hpp"
#include "unary/oracle.hpp"
#include "unary/regops.hpp"

namespace fs = std::filesystem;
using namespace unary;

namespace {

constexpr std::size_t oracle_cap = 10'000'000;

struct Outcome {
    bool ok = true;
    std::string detail;
    double limit_s = 0;  // 0 means no runtime limit
};

// Collects the first few failure messages of a criterion.
class Failures {
public:
    void add(const std::string& what) {
        if (count_++ < 5) {
            std::fprintf(stderr, "  failure: %s\n", what.c_str());
        }
    }
    std::size_t count() const { return count_; }

private:
    std::size_t count_ = 0;
};

TrajectoryResult bits_of(const ChrobakNF& c) { return oracle_bits(c, oracle_cap); }
TrajectoryResult bits_of(const UnaryNfa& a) { return oracle_bits(a, oracle_cap); }

std::string describe(const ChrobakNF& c) {
    std::string out = "stem " + c.stem().to_string();
    for (const auto& cyc : c.cycles()) {
        out += " cycle " + cyc.to_string();
    }
    return out;
}

// Window past which both trajectories are periodic together.
std::size_t joint_window(const TrajectoryResult& a, const TrajectoryResult& b) {
    return std::max(a.threshold, b.threshold) + std::lcm(a.period, b.period);
}

bool complementary(const TrajectoryResult& a, const TrajectoryResult& b) {
    const std::size_t w = joint_window(a, b);
    for (std::size_t l = 0; l < w; ++l) {
        if (a.accepts(l) == b.accepts(l)) {
            return false;
        }
    }
    return true;
}

template <typename A, typename B2>
bool same_language(const A& a, const B2& b) {
    return oracle_relation(Relation::Equal, bits_of(a), bits_of(b)).holds;
}

// Bits of L(a) * F over [0, upto) for a finite set F given by its bits.
Bits concat_window(const TrajectoryResult& a, const Bits& finite, std::size_t upto) {
    Bits out(upto);
    for (std::size_t l = 0; l < upto; ++l) {
        for (std::size_t j = 0; j < finite.size() && j <= l; ++j) {
            if (finite[j] && a.accepts(l - j)) {
                out.set(l);
                break;
            }
        }
    }
    return out;
}

// All patterns over every set of distinct cycle lengths with total <= max_total,
// behind every stem of length <= max_stem.
std::vector<ChrobakNF> chrobak_family(std::size_t max_stem, std::size_t max_total) {
    std::vector<std::vector<std::size_t>> length_sets{{}};
    std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&)> grow =
        [&](std::size_t next, std::size_t left, std::vector<std::size_t>& cur) {
            for (std::size_t len = next; len <= left; ++len) {
                cur.push_back(len);
                length_sets.push_back(cur);
                grow(len + 1, left - len, cur);
                cur.pop_back();
            }
        };
    std::vector<std::size_t> cur;
    grow(1, max_total, cur);

    std::vector<Bits> stems;
    for (std::size_t s = 0; s <= max_stem; ++s) {
        for (std::size_t v = 0; v < (std::size_t{1} << s); ++v) {
            Bits b(s);
            for (std::size_t i = 0; i < s; ++i) {
                b.set(i, ((v >> i) & 1U) != 0);
            }
            stems.push_back(b);
        }
    }
    std::vector<ChrobakNF> out;
    for (const auto& lengths : length_sets) {
        const std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
        for (std::size_t v = 0; v < (std::size_t{1} << total); ++v) {
            std::vector<Bits> cycles;
            std::size_t bit = 0;
            for (auto len : lengths) {
                Bits cyc(len);
                for (std::size_t i = 0; i < len; ++i, ++bit) {
                    cyc.set(i, ((v >> bit) & 1U) != 0);
                }
                cycles.push_back(cyc);
            }
            for (const auto& stem : stems) {
                out.emplace_back(stem, cycles);
            }
        }
    }
    return out;
}

Outcome criterion_complement() {
    Failures f;
    std::vector<ChrobakNF> cases;
    std::size_t exhaustive = 0;
    for (auto& c : chrobak_family(2, 8)) {
        if (is_unambiguous(c)) {
            cases.push_back(std::move(c));
            ++exhaustive;
        }
    }
    Rng rng(101);
    for (std::size_t i = 0; i < 500; ++i) {
        cases.push_back(random_ufa(rng, 1 + i % 40));
    }
    for (const auto& c : cases) {
        const ChrobakNF comp = complement_ufa(c);
        if (!complementary(bits_of(c), bits_of(comp))) {
            f.add("not the complement: " + describe(c));
        }
        if (ambiguity_chrobak(comp).verdict != Ambiguity::Unambiguous) {
            f.add("ambiguous complement: " + describe(c));
        }
        const std::size_t n = c.total_states();
        const std::size_t out = comp.total_states();
        if (out > 0 && std::log2(static_cast<double>(out)) > complement_bound_log2(n)) {
            f.add("size bound exceeded: " + describe(c));
        }
    }
    return {f.count() == 0,
            std::to_string(exhaustive) + " exhaustive + 500 random UFAs, " +
                std::to_string(f.count()) + " failures",
            60};
}

Outcome criterion_subset() {
    Failures f;
    std::size_t checked = 0;
    std::size_t refuted = 0;
    auto check = [&](const ChrobakNF& a, const ChrobakNF& b) {
        ++checked;
        const RelationVerdict got = nfa_subset(a, b);
        const RelationVerdict want = oracle_relation(Relation::Subset, bits_of(a), bits_of(b));
        if (got.holds != want.holds) {
            f.add("verdict differs: " + describe(a) + " <= " + describe(b));
            return;
        }
        if (!got.holds) {
            ++refuted;
            const Natural& w = got.witness->value;
            if (!a.accepts(w) || b.accepts(w)) {
                f.add("witness " + to_decimal(w) + " does not separate " + describe(a) +
                      " <= " + describe(b));
            }
        }
    };
    const auto tiny = chrobak_family(1, 3);
    for (const auto& a : tiny) {
        for (const auto& b : tiny) {
            check(a, b);
        }
    }
    Rng rng(202);
    for (std::size_t i = 0; i < 1000; ++i) {
        const ChrobakNF a = random_chrobak(rng, 1 + i % 24, 12);
        const ChrobakNF b = random_chrobak(rng, 1 + (i * 7) % 24, 12);
        check(a, b);
    }
    return {f.count() == 0,
            std::to_string(checked) + " pairs (" + std::to_string(tiny.size() * tiny.size()) +
                " exhaustive), " + std::to_string(refuted) + " refuted with witnesses, " +
                std::to_string(f.count()) + " failures",
            60};
}

Outcome criterion_density() {
    Failures f;
    Rng rng(303);
    std::size_t universal = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        const ChrobakNF c = random_ufa(rng, 1 + i % 40);
        const bool exact = ufa_universal(c, UniversalMode::Exact);
        const bool modular = ufa_universal(c, UniversalMode::Modular);
        const bool general = nfa_universal(c).holds;
        const bool oracle = oracle_universal(bits_of(c)).holds;
        universal += oracle ? 1 : 0;
        if (exact != oracle || modular != oracle || general != oracle) {
            f.add("universality disagrees: " + describe(c));
        }
    }
    std::size_t included = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        const ChrobakNF a = random_ufa(rng, 1 + i % 20);
        const ChrobakNF b = random_ufa(rng, 1 + (i * 3) % 20);
        ChrobakNF lhs = a;
        ChrobakNF rhs = b;
        if (i % 3 == 1) {
            lhs = intersect(a, b);
            rhs = a;
        } else if (i % 3 == 2) {
            rhs = union_ufa(a, b);
        }
        if (!is_unambiguous(lhs) || !is_unambiguous(rhs)) {
            f.add("pair is not unambiguous: " + describe(lhs) + " <= " + describe(rhs));
            continue;
        }
        const bool got = ufa_inclusion(lhs, rhs).holds;
        included += got ? 1 : 0;
        if (got != nfa_subset(lhs, rhs).holds) {
            f.add("inclusion disagrees: " + describe(lhs) + " <= " + describe(rhs));
        }
    }
    return {f.count() == 0,
            "500 UFAs (" + std::to_string(universal) + " universal), 500 pairs (" +
                std::to_string(included) + " included), " + std::to_string(f.count()) +
                " failures"};
}

// Cycle of n states whose only accepting state is n-1.
UnaryNfa lone_cycle(std::size_t n) {
    std::vector<std::pair<State, State>> edges;
    for (State i = 0; i < n; ++i) {
        edges.emplace_back(i, static_cast<State>((i + 1) % n));
    }
    return UnaryNfa::from_edges(n, {0}, {static_cast<State>(n - 1)}, edges);
}

Outcome criterion_constants() {
    Failures f;
    Rng rng(404);
    std::size_t star_cases = 0;
    std::size_t worst_star = 0;
    for (std::size_t n = 1; n <= 50; ++n) {
        std::vector<UnaryNfa> inputs{lone_cycle(n)};
        for (double density : {0.05, 0.1, 0.2, 0.4}) {
            inputs.push_back(random_nfa(rng, n, density));
        }
        for (const auto& a : inputs) {
            ++star_cases;
            const std::size_t out = state_count(star(a));
            worst_star = std::max(worst_star, out);
            if (out > (n - 1) * (n - 1) + 1) {
                f.add("star of an " + std::to_string(n) + "-state NFA has " +
                      std::to_string(out) + " states");
            }
        }
    }
    for (std::size_t i = 0; i < 200; ++i) {
        const ChrobakNF a = random_ufa(rng, 1 + i % 20);
        const ChrobakNF b = random_ufa(rng, 1 + (i * 5) % 20);
        const ChrobakNF prod = intersect(a, b);
        if (prod.total_states() > a.total_states() * b.total_states()) {
            f.add("intersection too large: " + describe(a) + " & " + describe(b));
        }
        if (ambiguity_chrobak(prod).verdict != Ambiguity::Unambiguous) {
            f.add("intersection ambiguous: " + describe(a) + " & " + describe(b));
        }
        const UnaryNfa na = chrobak_to_nfa(a);
        const UnaryNfa nb = chrobak_to_nfa(b);
        const UnaryNfa nprod = intersect(na, nb);
        if (nprod.num_states() > na.num_states() * nb.num_states()) {
            f.add("product automaton too large");
        }
        if (ambiguity_nfa(nprod).verdict != Ambiguity::Unambiguous) {
            f.add("product automaton ambiguous: " + describe(a) + " & " + describe(b));
        }
        if (!same_language(prod, nprod)) {
            f.add("intersection languages differ: " + describe(a) + " & " + describe(b));
        }
    }
    for (std::size_t i = 0; i < 200; ++i) {
        const UnaryNfa a = random_nfa(rng, 1 + i % 12, 0.2);
        const UnaryNfa b = random_nfa(rng, 1 + (i * 5) % 12, 0.2);
        const std::size_t sum = a.num_states() + b.num_states();
        const UnaryNfa u = disjoint_union(a, b);
        if (u.num_states() != sum) {
            f.add("disjoint union has " + std::to_string(u.num_states()) + " states");
        }
        const UnaryNfa c = concat_nfa(a, b);
        if (c.num_states() != sum) {
            f.add("concatenation has " + std::to_string(c.num_states()) + " states");
        }
        const TrajectoryResult ta = bits_of(a);
        const TrajectoryResult tb = bits_of(b);
        const TrajectoryResult tu = bits_of(u);
        const TrajectoryResult tc = bits_of(c);
        const std::size_t w = 3 * (joint_window(ta, tb) + sum);
        for (std::size_t l = 0; l < w; ++l) {
            if (tu.accepts(l) != (ta.accepts(l) || tb.accepts(l))) {
                f.add("disjoint union language wrong at " + std::to_string(l));
                break;
            }
            bool in_concat = false;
            for (std::size_t j = 0; j <= l && !in_concat; ++j) {
                in_concat = ta.accepts(j) && tb.accepts(l - j);
            }
            if (tc.accepts(l) != in_concat) {
                f.add("concatenation language wrong at " + std::to_string(l));
                break;
            }
        }
    }
    return {f.count() == 0,
            std::to_string(star_cases) + " star inputs (largest output " +
                std::to_string(worst_star) + "), 200 intersections, 200 union/concat pairs, " +
                std::to_string(f.count()) + " failures"};
}

// Every CNF whose clauses are distinct non-tautological clauses over
// variables 1..num_vars, num_vars <= 3, at most 4 clauses, 3-occur.
std::vector<CnfInstance> enumerate_small_cnfs() {
    std::vector<CnfInstance> out;
    for (std::size_t nv = 1; nv <= 3; ++nv) {
        std::vector<std::vector<int>> clauses;
        std::size_t pow3 = 1;
        for (std::size_t i = 0; i < nv; ++i) {
            pow3 *= 3;
        }
        for (std::size_t code = 1; code < pow3; ++code) {
            std::vector<int> clause;
            std::size_t rest = code;
            for (std::size_t v = 1; v <= nv; ++v, rest /= 3) {
                if (rest % 3 == 1) {
                    clause.push_back(static_cast<int>(v));
                } else if (rest % 3 == 2) {
                    clause.push_back(-static_cast<int>(v));
                }
            }
            clauses.push_back(clause);
        }
        std::function<void(std::size_t, CnfInstance&)> pick = [&](std::size_t from,
                                                                     CnfInstance& cur) {
            if (cur.is_three_occur()) {
                out.push_back(cur);
            } else {
                return;  // adding clauses only adds occurrences
            }
            if (cur.clauses.size() == 4) {
                return;
            }
            for (std::size_t i = from; i < clauses.size(); ++i) {
                cur.clauses.push_back(clauses[i]);
                pick(i + 1, cur);
                cur.clauses.pop_back();
            }
        };
        CnfInstance cur;
        cur.num_vars = nv;
        pick(0, cur);
    }
    return out;
}

Outcome criterion_prop1() {
    Failures f;
    std::vector<CnfInstance> cases = enumerate_small_cnfs();
    const std::size_t enumerated = cases.size();
    Rng rng(505);
    for (std::size_t i = 0; i < 200; ++i) {
        cases.push_back(random_three_occur_cnf(rng, 8, 4));
    }
    std::size_t unsat = 0;
    for (const auto& c : cases) {
        const bool want = !brute_sat(c).has_value();
        unsat += want ? 1 : 0;
        const ChrobakNF nfa = gen_universality_nfa(c).first;
        if (nfa_universal(nfa).holds != want) {
            f.add("nfa_universal disagrees on " + print_dimacs(c));
        }
        if (oracle_universal_scan(nfa, std::size_t{1} << 40).holds != want) {
            f.add("oracle disagrees on " + print_dimacs(c));
        }
    }
    return {f.count() == 0,
            std::to_string(enumerated) + " enumerated + 200 random CNFs (" +
                std::to_string(unsat) + " unsatisfiable), " + std::to_string(f.count()) +
                " failures",
            120};
}

std::vector<CnfInstance> formula_cases() {
    std::vector<CnfInstance> out;
    out.push_back({1, {{1}, {-1}}});
    out.push_back({2, {{1, 2}, {-1}, {-2}}});
    out.push_back({2, {{1, 2}, {-1, 2}, {-2}}});
    out.push_back({2, {{1}, {-1, 2}, {-2}}});
    out.push_back({3, {{1, 2}, {-1, 3}, {-2}, {-3}}});
    out.push_back({3, {{1}, {2}, {3}}});
    out.push_back({3, {{1, 2, 3}, {-1, -2}, {-3}}});
    Rng rng(606);
    while (out.size() < 60) {
        CnfInstance c = random_three_occur_cnf(rng, 4, 4);
        if (!c.clauses.empty()) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

Outcome criterion_formula() {
    Failures f;
    const Formula query = parse_formula("(H1 & H2) . K = ALL");
    std::size_t unsat = 0;
    const auto cases = formula_cases();
    for (const auto& c : cases) {
        const bool want = !brute_sat(c).has_value();
        unsat += want ? 1 : 0;
        const FormulaInstance inst = gen_formula_instance(c);
        const std::map<std::string, ChrobakNF> bindings{
            {"H1", inst.h1}, {"H2", inst.h2}, {"K", inst.k}};
        const FormulaValue got = eval_formula(query, bindings, EvalOptions{true});
        if (std::get<bool>(got) != want) {
            f.add("eval_formula disagrees on " + print_dimacs(c));
        }

        const TrajectoryResult t1 = bits_of(inst.h1);
        const TrajectoryResult t2 = bits_of(inst.h2);
        const std::size_t w = joint_window(t1, t2);
        TrajectoryResult both;
        both.bits = Bits(w);
        both.threshold = std::max(t1.threshold, t2.threshold);
        both.period = std::lcm(t1.period, t2.period);
        both.exact = true;
        for (std::size_t l = 0; l < w; ++l) {
            both.bits.set(l, t1.accepts(l) && t2.accepts(l));
        }
        const Bits k_bits = membership_bits(inst.k, inst.k.stem_length());
        const Bits cat = concat_window(both, k_bits, w + k_bits.size());
        if (cat.all() != want) {
            f.add("oracle disagrees on " + print_dimacs(c));
        }

        const ChrobakNF structured = gen_intersection_ufa(inst.h1, inst.h2, inst.meta);
        for (const ChrobakNF* h : {&inst.h1, &inst.h2, &structured}) {
            if (ambiguity_chrobak(*h).verdict != Ambiguity::Unambiguous) {
                f.add("ambiguous automaton for " + print_dimacs(c));
            }
        }
        if (!oracle_relation(Relation::Equal, bits_of(structured), both).holds ||
            !same_language(structured, intersect(inst.h1, inst.h2))) {
            f.add("structured intersection differs for " + print_dimacs(c));
        }
    }
    return {f.count() == 0,
            std::to_string(cases.size()) + " instances (" + std::to_string(unsat) +
                " unsatisfiable), " + std::to_string(f.count()) + " failures"};
}

Outcome criterion_blowup() {
    Failures f;
    const BlowupInstance inst = gen_concat_blowup(4);
    if (inst.meta.k != 2) {
        f.add("k = " + std::to_string(inst.meta.k));
    }
    if (inst.meta.primes.primes != std::vector<std::uint64_t>{5, 7}) {
        f.add("unexpected primes");
    }
    std::vector<std::size_t> lengths;
    for (const auto& cyc : inst.u.cycles()) {
        lengths.push_back(cyc.size());
    }
    if (lengths != std::vector<std::size_t>{25, 35, 5}) {
        f.add("unexpected cycle lengths");
    }
    const TrajectoryResult tu = bits_of(inst.u);
    const Bits h_bits = membership_bits(inst.h, inst.h.stem_length());
    const std::size_t upto = tu.threshold + 4 * 175 + h_bits.size();
    const Bits comp = ~concat_window(tu, h_bits, upto);
    std::size_t residue = 175;
    for (std::size_t l = 0; l < upto; ++l) {
        if (comp[l]) {
            residue = l % 175;
            break;
        }
    }
    if (residue % 25 != 23 || residue % 35 != 33) {
        f.add("complement residue " + std::to_string(residue));
    }
    for (std::size_t l = 0; l < upto; ++l) {
        if (comp[l] != (l % 175 == residue)) {
            f.add("complement is not one class at length " + std::to_string(l));
            break;
        }
    }
    if (inst.meta.expected_complement.modulus != Natural(175) ||
        inst.meta.expected_complement.residue != Natural(residue)) {
        f.add("recorded complement class differs");
    }
    const std::size_t period = minimal_period(comp, 0);
    if (period != 175) {
        f.add("minimal period " + std::to_string(period));
    }
    return {f.count() == 0,
            "complement is " + std::to_string(residue) + " mod " + std::to_string(period) + ", " +
                std::to_string(f.count()) + " failures",
            10};
}

Outcome criterion_round_trips() {
    Failures f;
    std::size_t fixtures = 0;
    for (const auto& entry : fs::directory_iterator(UNARY_FIXTURE_DIR)) {
        if (entry.path().extension() != ".uaf") {
            continue;
        }
        ++fixtures;
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        const std::string text = ss.str();
        if (print_uaf(parse_uaf(text)) != text) {
            f.add("fixture does not round-trip: " + entry.path().filename().string());
        }
    }
    Rng rng(808);
    std::size_t cases = 0;
    for (std::size_t i = 0; i < 300; ++i) {
        const UnaryNfa a = random_nfa(rng, 1 + i % 16, 0.15);
        ++cases;
        if (!same_language(a, nfa_to_chrobak(a))) {
            f.add("nfa_to_chrobak changes the language");
        }
        const ChrobakNF c = random_chrobak(rng, 1 + i % 24, 10);
        const ChrobakNF d = random_chrobak(rng, 1 + (i * 7) % 24, 10);
        if (!same_language(c, normalize(c))) {
            f.add("normalize changes " + describe(c));
        }
        if (!same_language(c, determinize(c))) {
            f.add("determinize changes " + describe(c));
        }
        const auto [ec, ed] = equalize_stems(c, d);
        if (ec.stem_length() != ed.stem_length() || !same_language(c, ec) ||
            !same_language(d, ed)) {
            f.add("equalize_stems changes " + describe(c) + " / " + describe(d));
        }
    }
    return {f.count() == 0 && fixtures > 0,
            std::to_string(fixtures) + " fixtures, " + std::to_string(cases) +
                " conversion cases, " + std::to_string(f.count()) + " failures"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"complement matches the oracle", criterion_complement},
        {"prime-basis comparison matches the oracle", criterion_subset},
        {"density tests agree", criterion_density},
        {"state bounds of regular operations", criterion_constants},
        {"universality reduction from 3-occur SAT", criterion_prop1},
        {"intersection-concatenation reduction", criterion_formula},
        {"concatenation blow-up instance", criterion_blowup},
        {"format and conversion round trips", criterion_round_trips},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto [name, run] = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = std::to_string(secs).substr(0, std::to_string(secs).find('.') + 3) + " s";
        if (o.limit_s > 0) {
            timing += " of " + std::to_string(static_cast<int>(o.limit_s)) + " s";
            if (secs >= o.limit_s) {
                o.ok = false;
            }
        }
        std::printf("criterion %zu %s: %s; %s (%s)\n", i + 1, o.ok ? "PASS" : "FAIL", name,
                    o.detail.c_str(), timing.c_str());
        std::fflush(stdout);
        failed += o.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
