#include "unary/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

#include "unary/decision.hpp"
#include "unary/errors.hpp"
#include "unary/hardness.hpp"
#include "unary/oracle.hpp"
#include "unary/regops.hpp"

namespace unary {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Bits random_bits(Rng& rng, std::size_t n, double p) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.set(i, coin(rng, p));
    }
    return b;
}

using Case = std::pair<std::string, std::function<BenchRow()>>;

std::string case_name(const char* prefix, std::size_t n, std::size_t rep) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-n%03zu-r%02zu", prefix, n, rep);
    return buf;
}

template <typename F>
double time_ms(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

std::vector<Case> complement_growth(std::uint64_t seed) {
    std::vector<Case> cases;
    for (std::size_t n = 8; n <= 64; n += 8) {
        for (std::size_t rep = 0; rep < 4; ++rep) {
            const std::string name = case_name("complement", n, rep);
            cases.emplace_back(name, [=] {
                Rng rng(seed ^ (n * 1'000'003 + rep));
                const ChrobakNF c = random_ufa(rng, n);
                BenchRow row{name, "complement_ufa", c.total_states(), 0, 0, verdict_ok};
                try {
                    ChrobakNF out;
                    row.time_ms = time_ms([&] { out = complement_ufa(c); });
                    row.n_out = out.total_states();
                    const double size_log2 = std::log2(static_cast<double>(std::max<std::size_t>(row.n_out, 1)));
                    if (size_log2 > complement_bound_log2(row.n_in)) {
                        row.verdict = verdict_bound_violated;
                    }
                } catch (const GuardExceeded&) {
                    row.verdict = "guard-exceeded";
                }
                return row;
            });
        }
    }
    return cases;
}

std::vector<Case> star_bound(std::uint64_t seed) {
    std::vector<Case> cases;
    for (std::size_t n = 2; n <= 50; n += 4) {
        for (std::size_t rep = 0; rep < 2; ++rep) {
            const std::string name = case_name("star", n, rep);
            cases.emplace_back(name, [=] {
                Rng rng(seed ^ (n * 7'919 + rep));
                const UnaryNfa a = random_nfa(rng, n, 2.0 / static_cast<double>(n));
                BenchRow row{name, "star", n, 0, 0, verdict_ok};
                ChrobakNF out;
                row.time_ms = time_ms([&] { out = star(a); });
                row.n_out = out.total_states();
                if (row.n_out > (n - 1) * (n - 1) + 1) {
                    row.verdict = verdict_bound_violated;
                }
                return row;
            });
        }
    }
    return cases;
}

std::vector<Case> product_bound(std::uint64_t seed) {
    std::vector<Case> cases;
    for (std::size_t n = 4; n <= 40; n += 4) {
        for (std::size_t rep = 0; rep < 3; ++rep) {
            const std::string name = case_name("product", n, rep);
            cases.emplace_back(name, [=] {
                Rng rng(seed ^ (n * 104'729 + rep));
                const ChrobakNF a = random_ufa(rng, n);
                const ChrobakNF b = random_ufa(rng, n);
                BenchRow row{name, "intersect", std::max(a.total_states(), b.total_states()),
                             0, 0, verdict_ok};
                ChrobakNF out;
                row.time_ms = time_ms([&] { out = intersect(a, b); });
                row.n_out = out.total_states();
                if (row.n_out > a.total_states() * b.total_states()) {
                    row.verdict = verdict_bound_violated;
                } else if (!is_unambiguous(out)) {
                    row.verdict = "ambiguous";
                }
                return row;
            });
        }
    }
    return cases;
}

std::vector<Case> thm2_vs_oracle(std::uint64_t seed) {
    std::vector<Case> cases;
    for (std::size_t rep = 0; rep < 40; ++rep) {
        const std::size_t n = 6 + (rep % 10) * 2;
        const std::string name = case_name("subset", n, rep);
        cases.emplace_back(name, [=] {
            Rng rng(seed ^ (rep * 15'485'863 + n));
            const ChrobakNF a = random_chrobak(rng, n / 2);
            const ChrobakNF b = random_chrobak(rng, n / 2);
            BenchRow row{name, "nfa_subset", a.total_states() + b.total_states(), 0, 0, ""};
            RelationVerdict got;
            row.time_ms = time_ms([&] { got = nfa_subset(a, b); });
            row.n_out = to_size(comparison_basis(a, b).r).value_or(0);
            const RelationVerdict want = oracle_relation(Relation::Subset, a, b);
            const bool agree = got.holds == want.holds &&
                               (!got.witness || got.witness->value == want.witness->value);
            row.verdict = agree ? "agree" : "disagree";
            return row;
        });
    }
    return cases;
}

std::vector<Case> hardness_roundtrip(std::uint64_t seed) {
    std::vector<Case> cases;
    for (std::size_t rep = 0; rep < 20; ++rep) {
        const std::string name = case_name("prop1", 0, rep);
        cases.emplace_back(name, [=] {
            Rng rng(seed ^ (rep * 32'452'843));
            const CnfInstance cnf = random_three_occur_cnf(rng, 6, 3);
            const auto [u, meta] = gen_universality_nfa(cnf);
            BenchRow row{name, "gen_universality_nfa", cnf.num_vars, u.total_states(), 0, ""};
            bool universal = false;
            row.time_ms = time_ms([&] { universal = nfa_universal(u).holds; });
            row.verdict = universal == !brute_sat(cnf).has_value() ? "agree" : "disagree";
            return row;
        });
    }
    cases.emplace_back("blowup-m004", [] {
        const BlowupInstance inst = gen_concat_blowup(4);
        BenchRow row{"blowup-m004", "concat_via_bits", inst.u.total_states(), 0, 0, ""};
        ChrobakNF out;
        row.time_ms = time_ms([&] { out = concat_via_bits(inst.u, inst.h); });
        row.n_out = out.total_states();
        const ChrobakNF missing = complement_ufa(out);
        const auto& expected = inst.meta.expected_complement;
        bool agree = missing.cycles().size() == 1 && missing.stem().none() &&
                     Natural(missing.cycles()[0].size()) == expected.modulus &&
                     missing.cycles()[0].count() == 1;
        if (agree) {
            const Bits& cyc = missing.cycles()[0];
            std::size_t j = 0;
            while (!cyc[j]) {
                ++j;
            }
            agree = expected.contains(Natural(missing.stem_length() + j));
        }
        row.verdict = agree ? "agree" : "disagree";
        return row;
    });
    return cases;
}

}  // namespace

ChrobakNF random_ufa(Rng& rng, std::size_t max_states) {
    for (;;) {
        const std::size_t stem_len = max_states >= 4 ? pick(rng, 0, max_states / 4) : 0;
        const std::size_t budget = max_states - stem_len;
        const bool dense = coin(rng, 0.3);
        Bits stem = dense && coin(rng, 0.5) ? Bits(stem_len, true) : random_bits(rng, stem_len, 0.5);
        std::vector<Bits> cycles;
        if (budget > 0) {
            const std::size_t f = pick(rng, 1, std::min<std::size_t>(6, budget));
            const std::size_t k = pick(rng, 1, std::min<std::size_t>(f, 4));
            std::set<std::size_t> used;
            std::size_t remaining = budget;
            for (std::size_t i = 0; i < k && remaining >= f; ++i) {
                std::size_t m = pick(rng, 1, remaining / f);
                for (int tries = 0; used.count(m) != 0 && tries < 8; ++tries) {
                    m = pick(rng, 1, remaining / f);
                }
                if (used.count(m) != 0) {
                    break;
                }
                used.insert(m);
                remaining -= f * m;
                cycles.emplace_back(f * m);
            }
            std::vector<std::size_t> owner(f);
            for (auto& o : owner) {
                if (cycles.empty()) {
                    break;
                }
                o = pick(rng, 0, dense ? cycles.size() - 1 : cycles.size());
            }
            for (std::size_t i = 0; i < cycles.size(); ++i) {
                for (std::size_t j = 0; j < cycles[i].size(); ++j) {
                    if (owner[j % f] == i && (dense || coin(rng, 0.5))) {
                        cycles[i].set(j);
                    }
                }
            }
        }
        ChrobakNF c(std::move(stem), std::move(cycles));
        if (ambiguity_chrobak(c).verdict == Ambiguity::Unambiguous) {
            return c;
        }
    }
}

ChrobakNF random_chrobak(Rng& rng, std::size_t max_states, std::size_t max_cycle) {
    const std::size_t stem_len = max_states >= 4 ? pick(rng, 0, max_states / 4) : 0;
    Bits stem = random_bits(rng, stem_len, 0.5);
    std::size_t remaining = max_states - stem_len;
    std::vector<Bits> cycles;
    const double density = coin(rng, 0.5) ? 0.6 : 0.3;
    while (remaining > 0 && coin(rng, 0.8)) {
        const std::size_t len = pick(rng, 1, std::min(max_cycle, remaining));
        remaining -= len;
        cycles.push_back(random_bits(rng, len, density));
    }
    return ChrobakNF(std::move(stem), std::move(cycles));
}

UnaryNfa random_nfa(Rng& rng, std::size_t n, double density) {
    std::vector<State> starts;
    std::vector<State> accepts;
    std::vector<std::vector<State>> succ(n);
    for (State q = 0; q < n; ++q) {
        if (q == 0 || coin(rng, 0.1)) {
            starts.push_back(q);
        }
        if (coin(rng, 0.3)) {
            accepts.push_back(q);
        }
        for (State r = 0; r < n; ++r) {
            if (coin(rng, density)) {
                succ[q].push_back(r);
            }
        }
    }
    return UnaryNfa(n, std::move(starts), std::move(accepts), std::move(succ));
}

CnfInstance random_three_occur_cnf(Rng& rng, std::size_t max_vars, std::size_t max_clauses) {
    CnfInstance c;
    c.num_vars = pick(rng, 1, max_vars);
    const std::size_t target = pick(rng, 1, max_clauses);
    std::vector<std::size_t> occ(c.num_vars + 1, 0);
    std::set<std::vector<int>> seen;
    for (std::size_t attempt = 0; attempt < 64 && c.clauses.size() < target; ++attempt) {
        const std::size_t width = pick(rng, 1, std::min<std::size_t>(3, c.num_vars));
        std::vector<int> vars;
        while (vars.size() < width) {
            const int v = static_cast<int>(pick(rng, 1, c.num_vars));
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
                vars.push_back(v);
            }
        }
        std::sort(vars.begin(), vars.end());
        if (std::any_of(vars.begin(), vars.end(), [&](int v) { return occ[v] >= 3; })) {
            continue;
        }
        std::vector<int> clause;
        for (int v : vars) {
            clause.push_back(coin(rng, 0.5) ? v : -v);
        }
        if (!seen.insert(clause).second) {
            continue;
        }
        for (int v : vars) {
            ++occ[v];
        }
        c.clauses.push_back(std::move(clause));
    }
    return c;
}

std::vector<std::string> suite_names() {
    return {"complement-growth", "star-bound", "product-bound", "thm2-vs-oracle",
            "hardness-roundtrip"};
}

std::vector<BenchRow> run_suite(const std::string& suite, std::size_t jobs, std::uint64_t seed) {
    std::vector<Case> cases;
    if (suite == "complement-growth") {
        cases = complement_growth(seed);
    } else if (suite == "star-bound") {
        cases = star_bound(seed);
    } else if (suite == "product-bound") {
        cases = product_bound(seed);
    } else if (suite == "thm2-vs-oracle") {
        cases = thm2_vs_oracle(seed);
    } else if (suite == "hardness-roundtrip") {
        cases = hardness_roundtrip(seed);
    } else {
        throw std::invalid_argument("unknown bench suite '" + suite + "'");
    }

    std::vector<BenchRow> rows(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            rows[i] = cases[i].second();
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(jobs, 1, cases.size());
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();
    std::sort(rows.begin(), rows.end(),
              [](const BenchRow& a, const BenchRow& b) { return a.case_name < b.case_name; });
    return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows, bool with_time) {
    std::string out = "case,algorithm,n_in,n_out,time_ms,verdict\n";
    char buf[32];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.3f", with_time ? r.time_ms : 0.0);
        out += r.case_name + "," + r.algorithm + "," + std::to_string(r.n_in) + "," +
               std::to_string(r.n_out) + "," + buf + "," + r.verdict + "\n";
    }
    return out;
}

double complement_bound_log2(std::size_t n) {
    const double l = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
    return (l + 10.0) * l;
}

}  // namespace unary
