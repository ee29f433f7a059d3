#include "unary/hardness.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "unary/errors.hpp"
#include "unary/regops.hpp"

namespace unary {

namespace {

void require_three_occur(const CnfInstance& c) {
    c.validate();
    if (!c.is_three_occur()) {
        throw NotThreeOccur("instance has a variable with more than three occurrences");
    }
}

std::vector<int> distinct_vars(const std::vector<std::vector<int>>& clauses,
                               const std::vector<std::size_t>& which) {
    std::vector<int> vars;
    for (auto j : which) {
        for (int lit : clauses[j]) {
            vars.push_back(std::abs(lit));
        }
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

// Value of `var` under assignment index `a` over `vars`.
bool value_of(const std::vector<int>& vars, std::uint64_t a, int var) {
    const auto it = std::lower_bound(vars.begin(), vars.end(), var);
    return ((a >> static_cast<std::size_t>(it - vars.begin())) & 1U) != 0;
}

bool clause_satisfied(const std::vector<int>& clause, const std::vector<int>& vars,
                      std::uint64_t a) {
    return std::any_of(clause.begin(), clause.end(),
                       [&](int lit) { return value_of(vars, a, std::abs(lit)) == (lit > 0); });
}

std::size_t log2_clamped(std::size_t m) {
    return std::max<std::size_t>(1, m == 0 ? 0 : floor_log2(m));
}

}  // namespace

CnfInstance to_three_occur(const CnfInstance& c) {
    c.validate();
    const auto occ = c.occurrences();
    CnfInstance out;
    out.num_vars = c.num_vars;
    out.clauses = c.clauses;
    for (std::size_t v = 1; v <= c.num_vars; ++v) {
        const std::size_t d = occ[v];
        if (d <= 3) {
            continue;
        }
        const int first = static_cast<int>(out.num_vars) + 1;
        out.num_vars += d;
        int k = 0;
        for (auto& clause : out.clauses) {
            for (int& lit : clause) {
                if (static_cast<std::size_t>(std::abs(lit)) == v) {
                    lit = lit > 0 ? first + k : -(first + k);
                    ++k;
                }
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            const int yi = first + static_cast<int>(i);
            const int next = first + static_cast<int>((i + 1) % d);
            out.clauses.push_back({-yi, next});
        }
    }
    return out;
}

std::pair<ChrobakNF, Prop1Meta> gen_universality_nfa(const CnfInstance& c) {
    require_three_occur(c);
    Prop1Meta meta;
    const std::size_t m = c.num_vars;
    meta.r = std::max<std::size_t>(1, (m == 0 ? 0 : floor_log2(m)) / 3);
    meta.s = (c.clauses.size() + meta.r - 1) / meta.r;
    meta.primes = first_primes_ge(meta.s, 8 * static_cast<std::uint64_t>(m));
    for (std::size_t i = 0; i < meta.s; ++i) {
        std::vector<std::size_t> group;
        for (std::size_t j = i * meta.r; j < std::min(c.clauses.size(), (i + 1) * meta.r); ++j) {
            group.push_back(j);
        }
        meta.assignment_order.push_back(distinct_vars(c.clauses, group));
        meta.clauses_of.push_back(std::move(group));
    }
    for (std::size_t i = 0; i < meta.s; ++i) {
        if ((std::uint64_t{1} << meta.assignment_order[i].size()) > meta.primes.primes[i]) {
            throw std::logic_error("prime too small for the group's assignments");
        }
    }

    std::vector<Bits> cycles;
    auto valid = [&](std::size_t i, std::uint64_t k) {
        return k < (std::uint64_t{1} << meta.assignment_order[i].size());
    };
    for (std::size_t i = 0; i < meta.s; ++i) {
        const std::uint64_t p = meta.primes.primes[i];
        Bits cyc(p, true);
        for (std::uint64_t k = 0; valid(i, k) && k < p; ++k) {
            bool sat = true;
            for (auto j : meta.clauses_of[i]) {
                sat = sat && clause_satisfied(c.clauses[j], meta.assignment_order[i], k);
            }
            cyc.set(k, !sat);
        }
        cycles.push_back(std::move(cyc));
    }
    for (std::size_t i = 0; i < meta.s; ++i) {
        for (std::size_t j = i + 1; j < meta.s; ++j) {
            const auto& vi = meta.assignment_order[i];
            const auto& vj = meta.assignment_order[j];
            std::vector<int> shared;
            std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(),
                                  std::back_inserter(shared));
            if (shared.empty()) {
                continue;
            }
            meta.linked.emplace_back(i, j);
            const std::uint64_t pi = meta.primes.primes[i];
            const std::uint64_t pj = meta.primes.primes[j];
            Bits cyc(pi * pj);
            for (std::uint64_t k = 0; k < pi * pj; ++k) {
                const std::uint64_t ki = k % pi;
                const std::uint64_t kj = k % pj;
                if (!valid(i, ki) || !valid(j, kj)) {
                    continue;
                }
                const bool clash = std::any_of(shared.begin(), shared.end(), [&](int v) {
                    return value_of(vi, ki, v) != value_of(vj, kj, v);
                });
                cyc.set(k, clash);
            }
            cycles.push_back(std::move(cyc));
        }
    }
    return {ChrobakNF(Bits{}, std::move(cycles)), std::move(meta)};
}

FormulaInstance gen_formula_instance(const CnfInstance& c) {
    require_three_occur(c);
    FormulaInstance inst;
    auto& meta = inst.meta;
    meta.m = c.clauses.size();
    meta.group_size = log2_clamped(meta.m);
    const std::size_t groups = (meta.m + meta.group_size - 1) / meta.group_size;

    // Rename so that no variable is shared between groups.
    meta.renamed.emplace_back(0, 0);  // index 0 unused
    std::map<int, std::pair<int, std::size_t>> latest;  // original -> (copy, group)
    for (std::size_t g = 0; g < groups; ++g) {
        std::vector<std::size_t> members;
        for (std::size_t j = g * meta.group_size;
             j < std::min(meta.m, (g + 1) * meta.group_size); ++j) {
            std::vector<int> clause;
            for (int lit : c.clauses[j]) {
                const int x = std::abs(lit);
                auto it = latest.find(x);
                if (it == latest.end() || it->second.second != g) {
                    const int copy = static_cast<int>(meta.renamed.size());
                    meta.renamed.emplace_back(x, g);
                    if (it != latest.end()) {
                        meta.equalities.push_back({it->second.first, copy, it->second.second, g});
                    }
                    latest[x] = {copy, g};
                }
                const int v = latest[x].first;
                clause.push_back(lit > 0 ? v : -v);
            }
            members.push_back(meta.clauses.size());
            meta.clauses.push_back(std::move(clause));
        }
        meta.groups.push_back(std::move(members));
    }
    for (const auto& members : meta.groups) {
        meta.group_vars.push_back(distinct_vars(meta.clauses, members));
    }
    meta.m_prime = meta.m + meta.equalities.size();
    meta.block_width = 2 * (meta.m_prime + 1);

    std::size_t widest = 0;
    for (const auto& vars : meta.group_vars) {
        widest = std::max(widest, vars.size());
    }
    const std::uint64_t lower =
        std::max<std::uint64_t>(8 * meta.m + 1, std::uint64_t{1} << widest);
    meta.primes = first_primes_ge(groups, lower);

    const std::size_t width = meta.block_width;
    std::vector<Bits> first;
    std::vector<Bits> second;
    for (std::size_t i = 0; i < groups; ++i) {
        const std::uint64_t p = meta.primes.primes[i];
        const auto& vars = meta.group_vars[i];
        const std::uint64_t assignments = std::uint64_t{1} << vars.size();
        Bits ci(width * p);
        Bits ci2(width * p);
        for (std::uint64_t k = 0; k < p; ++k) {
            const std::uint64_t a = k < assignments ? k : 0;
            const std::size_t base = k * width;
            if (i == 0) {
                for (auto* cyc : {&ci, &ci2}) {
                    cyc->set(base);
                    cyc->set(base + 1);
                }
            }
            for (auto j : meta.groups[i]) {
                if (!clause_satisfied(meta.clauses[j], vars, a)) {
                    const std::size_t pos = base + 2 * (j + 1);
                    for (auto* cyc : {&ci, &ci2}) {
                        cyc->set(pos);
                        cyc->set(pos + 1);
                    }
                }
            }
            for (std::size_t e = 0; e < meta.equalities.size(); ++e) {
                const auto& eq = meta.equalities[e];
                const std::size_t pos = base + 2 * (meta.m + 1 + e);
                if (eq.group_x == i) {
                    const bool x = value_of(vars, a, eq.x);
                    ci.set(pos, x);
                    ci.set(pos + 1, !x);
                }
                if (eq.group_y == i) {
                    const bool y = value_of(vars, a, eq.y);
                    ci2.set(pos, !y);
                    ci2.set(pos + 1, y);
                }
            }
        }
        first.push_back(std::move(ci));
        second.push_back(std::move(ci2));
    }
    inst.h1 = ChrobakNF(Bits{}, std::move(first));
    inst.h2 = ChrobakNF(Bits{}, std::move(second));
    inst.k = ChrobakNF(Bits(2 * meta.m_prime, true), {});
    return inst;
}

BlowupInstance gen_concat_blowup(std::size_t m) {
    if (m < 4) {
        throw std::invalid_argument("gen_concat_blowup needs m >= 4");
    }
    BlowupInstance inst;
    auto& meta = inst.meta;
    meta.m = m;
    meta.k = std::max<std::size_t>(1, m / floor_log2(m));
    meta.primes = first_primes_ge(meta.k, m);
    const std::size_t k = meta.k;
    const std::size_t block = k + 3;

    std::vector<Bits> cycles;
    std::vector<ResidueClass> classes;
    for (std::size_t l = 0; l < k; ++l) {
        const std::size_t p = meta.primes.primes[l];
        Bits cyc(p * block);
        for (std::size_t h = 0; h + 1 < p; ++h) {
            cyc.set(l + 2 + h * block);
        }
        cycles.push_back(std::move(cyc));
        classes.emplace_back(Natural(p * block), Natural(k + 1 + block * (p - 1)));
    }
    Bits extra(block);
    extra.set(0);
    extra.set(1);
    extra.set(k + 2);
    cycles.push_back(std::move(extra));

    inst.u = ChrobakNF(Bits{}, std::move(cycles));
    inst.h = ChrobakNF(Bits(k, true), {});
    const auto solved = crt_solve(classes);
    if (!solved) {
        throw std::logic_error("gen_concat_blowup: complement classes are inconsistent");
    }
    meta.expected_complement = *solved;
    return inst;
}

ChrobakNF gen_intersection_ufa(const ChrobakNF& h1, const ChrobakNF& h2,
                               const FormulaInstanceMeta& meta) {
    return structured_intersection(h1, h2, meta.block_width);
}

}  // namespace unary
