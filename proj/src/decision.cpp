#include "unary/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "unary/chrobak.hpp"
#include "unary/errors.hpp"
#include "unary/regops.hpp"

namespace unary {

// ---------------------------------------------------------------------------
// Comparison basis

std::vector<std::uint64_t> ComparisonBasis::entries() const {
    std::vector<std::uint64_t> out{1};
    out.insert(out.end(), Q.begin(), Q.end());
    return out;
}

namespace {

std::uint64_t comparison_threshold(std::uint64_t n) {
    if (n < 2) {
        return 2;
    }
    const double x = static_cast<double>(n) * std::log2(static_cast<double>(n));
    auto t = static_cast<std::uint64_t>(std::ceil(std::cbrt(x) - 1e-9));
    // Correct floating point drift: t is the least integer with t^3 >= x.
    while (t > 0 && static_cast<double>((t - 1) * (t - 1) * (t - 1)) >= x) {
        --t;
    }
    while (static_cast<double>(t * t * t) < x) {
        ++t;
    }
    return std::max<std::uint64_t>(t, 2);
}

std::size_t cycle_states(const ChrobakNF& c) { return c.cycle_states(); }

// Host keys whose cycles make up the q-cycle.
std::vector<std::uint64_t> host_keys(std::uint64_t q) {
    if (q == 1) {
        return {1};
    }
    return {1, q};
}

}  // namespace

ComparisonBasis comparison_basis(const ChrobakNF& c1, const ChrobakNF& c2) {
    ComparisonBasis b;
    b.n = std::max(cycle_states(c1), cycle_states(c2));
    b.threshold = comparison_threshold(b.n);

    std::set<std::uint64_t> lengths;
    for (const auto* c : {&c1, &c2}) {
        for (const auto& cyc : c->cycles()) {
            lengths.insert(cyc.size());
        }
    }
    std::map<std::uint64_t, unsigned> max_exp;
    std::set<std::uint64_t> in_p;
    for (auto len : lengths) {
        const auto f = factorize(len);
        for (const auto& [p, e] : f) {
            max_exp[p] = std::max(max_exp[p], e);
            if (p < b.threshold) {
                in_p.insert(p);
            }
            for (const auto& [q, e2] : f) {
                if (q != p && q >= b.threshold) {
                    in_p.insert(p);
                }
            }
        }
    }
    for (const auto& [p, e] : max_exp) {
        if (in_p.count(p)) {
            b.P.push_back(p);
            for (unsigned i = 0; i < e; ++i) {
                b.r *= p;
            }
        } else {
            b.Q.push_back(p);
        }
    }
    auto host_of = [&](std::uint64_t len) -> std::uint64_t {
        std::uint64_t host = 1;
        for (const auto& [p, e] : factorize(len)) {
            if (!in_p.count(p)) {
                if (host != 1 || e > 2) {
                    throw std::logic_error("comparison basis: length " + std::to_string(len) +
                                           " has no host");
                }
                host = p;
            }
        }
        if ((b.r * host * host) % len != 0) {
            throw std::logic_error("comparison basis: length does not divide r*q^2");
        }
        return host;
    };
    for (std::size_t i = 0; i < c1.cycles().size(); ++i) {
        b.hosts_first[host_of(c1.cycles()[i].size())].push_back(i);
    }
    for (std::size_t i = 0; i < c2.cycles().size(); ++i) {
        b.hosts_second[host_of(c2.cycles()[i].size())].push_back(i);
    }
    return b;
}

namespace {

// One side's q-cycle, evaluated at positions s + t*r for t = 0, 1, ...
// Member cycles are those hosted at q or at 1.
class QCycleView {
public:
    QCycleView(const ChrobakNF& c, const std::map<std::uint64_t, std::vector<std::size_t>>& hosts,
               std::uint64_t q, std::uint64_t r) {
        for (std::uint64_t key : host_keys(q)) {
            auto it = hosts.find(key);
            if (it == hosts.end()) {
                continue;
            }
            for (auto i : it->second) {
                const Bits& cyc = c.cycles()[i];
                members_.push_back({&cyc, cyc.size(), r % cyc.size(), 0, 0});
            }
        }
        // Stride-0 members first, densest first, so most classes stop early.
        std::stable_sort(members_.begin(), members_.end(), [](const Member& a, const Member& b) {
            if ((a.stride == 0) != (b.stride == 0)) {
                return a.stride == 0;
            }
            return a.bits->count() * b.len > b.bits->count() * a.len;
        });
        constant_ = static_cast<std::size_t>(std::count_if(
            members_.begin(), members_.end(), [](const Member& m) { return m.stride == 0; }));
    }

    // Rewinds t to 0 for the current class. Members whose length divides r
    // have stride 0 and are evaluated once here.
    void start() {
        constant_hit_ = false;
        for (std::size_t i = 0; i < constant_; ++i) {
            if ((*members_[i].bits)[members_[i].base]) {
                constant_hit_ = true;
                return;
            }
        }
        for (std::size_t i = constant_; i < members_.size(); ++i) {
            members_[i].pos = members_[i].base;
        }
    }
    // Moves from class s to class s + 1.
    void next_class() {
        for (auto& m : members_) {
            m.base = m.base + 1 == m.len ? 0 : m.base + 1;
        }
    }
    // True when a stride-0 member accepts, hence at every t of this class.
    bool constant_accepts() const noexcept { return constant_hit_; }
    bool accepts() const {
        if (constant_hit_) {
            return true;
        }
        for (std::size_t i = constant_; i < members_.size(); ++i) {
            if ((*members_[i].bits)[members_[i].pos]) {
                return true;
            }
        }
        return false;
    }
    void advance() {
        for (std::size_t i = constant_; i < members_.size(); ++i) {
            auto& m = members_[i];
            m.pos += m.stride;
            if (m.pos >= m.len) {
                m.pos -= m.len;
            }
        }
    }
    bool empty() const noexcept { return members_.empty(); }
    // Period in t; divides q^2 since every member length divides r*q^2.
    std::uint64_t period() const {
        std::uint64_t p = 1;
        for (const auto& m : members_) {
            p = std::lcm(p, m.len / std::gcd(m.len, m.stride));
        }
        return p;
    }

private:
    struct Member {
        const Bits* bits;
        std::uint64_t len;
        std::uint64_t stride;
        std::uint64_t base;
        std::uint64_t pos;
    };
    std::vector<Member> members_;
    std::size_t constant_ = 0;
    bool constant_hit_ = false;
};

std::optional<WitnessLength> compare_stems(const ChrobakNF& x, const ChrobakNF& y) {
    for (std::size_t i = 0; i < x.stem_length(); ++i) {
        if (x.stem()[i] && !y.stem()[i]) {
            return WitnessLength{Natural(i), std::nullopt};
        }
    }
    return std::nullopt;
}

std::vector<ResidueClass> derivation_for(const Natural& value, std::size_t stem,
                                         const ComparisonBasis& b) {
    std::vector<ResidueClass> out;
    const Natural offset = value - stem;
    for (auto q : b.entries()) {
        const Natural mod = b.r * q * q;
        out.emplace_back(mod, Natural(stem) + offset % mod);
    }
    return out;
}

}  // namespace

Bits materialize_qcycle(const ChrobakNF& c, const ComparisonBasis& basis, std::uint64_t q,
                        bool first, std::size_t guard) {
    const Natural len_big = basis.r * q * q;
    const auto len = to_size(len_big);
    if (!len || *len > guard) {
        throw GuardExceeded("q-cycle length " + to_decimal(len_big) + " exceeds guard");
    }
    const auto& hosts = first ? basis.hosts_first : basis.hosts_second;
    Bits out(*len);
    for (std::uint64_t key : host_keys(q)) {
        auto it = hosts.find(key);
        if (it == hosts.end()) {
            continue;
        }
        for (auto i : it->second) {
            const Bits& cyc = c.cycles()[i];
            for (std::size_t t = 0; t < *len; ++t) {
                if (cyc[t % cyc.size()]) {
                    out.set(t);
                }
            }
        }
    }
    return out;
}

RelationVerdict nfa_subset(const ChrobakNF& c1, const ChrobakNF& c2, std::uint64_t guard) {
    auto [x, y] = equalize_stems(normalize(c1), normalize(c2));
    if (auto w = compare_stems(x, y)) {
        return RelationVerdict{false, std::move(w)};
    }
    const std::size_t stem = x.stem_length();
    const ComparisonBasis basis = comparison_basis(x, y);
    if (basis.r > Natural(guard)) {
        throw GuardExceeded("comparison modulus r = " + to_decimal(basis.r) + " exceeds guard");
    }
    const auto r = static_cast<std::uint64_t>(basis.r);
    const auto entries = basis.entries();
    std::vector<QCycleView> xs;
    std::vector<QCycleView> ys;
    for (auto q : entries) {
        xs.emplace_back(x, basis.hosts_first, q, r);
        ys.emplace_back(y, basis.hosts_second, q, r);
    }
    std::vector<std::uint64_t> spans;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        spans.push_back(std::lcm(xs[e].period(), ys[e].period()));
    }

    std::vector<std::optional<std::uint64_t>> reject_t(entries.size());
    auto next_class = [&] {
        for (std::size_t e = 0; e < entries.size(); ++e) {
            xs[e].next_class();
            ys[e].next_class();
        }
    };
    for (std::uint64_t s = 0; s < r; ++s, next_class()) {
        bool covered = false;  // condition (A)
        std::optional<std::pair<std::size_t, std::uint64_t>> violation;  // (B) fails here
        std::fill(reject_t.begin(), reject_t.end(), std::nullopt);
        for (std::size_t e = 0; e < entries.size() && !covered; ++e) {
            auto& xv = xs[e];
            auto& yv = ys[e];
            const std::uint64_t span = spans[e];
            xv.start();
            yv.start();
            if (yv.constant_accepts()) {
                covered = true;
                break;
            }
            bool all = true;
            for (std::uint64_t t = 0; t < span; ++t) {
                const bool ya = yv.accepts();
                if (!ya) {
                    all = false;
                    if (!reject_t[e]) {
                        reject_t[e] = t;
                    }
                    if (!violation && xv.accepts()) {
                        violation = std::make_pair(e, t);
                    }
                    if (violation) {
                        break;
                    }
                }
                xv.advance();
                yv.advance();
            }
            covered = all;
        }
        if (covered || !violation) {
            continue;
        }
        // Condition (C): both (A) and (B) fail for this class.
        std::vector<ResidueClass> classes;
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const std::uint64_t q = entries[e];
            const std::uint64_t t = e == violation->first ? violation->second : *reject_t[e];
            classes.emplace_back(basis.r * q * q, Natural(s) + Natural(t) * r);
        }
        const auto solved = crt_solve(classes);
        if (!solved) {
            throw std::logic_error("nfa_subset: CRT classes are inconsistent");
        }
        // Lower to the least separating length. A smaller one may sit in a
        // later class, so scan every offset below the CRT solution.
        Natural offset = solved->residue % lcm(cycle_lcm(x), cycle_lcm(y));
        const std::uint64_t limit = std::min<std::uint64_t>(
            witness_scan_budget, to_size(offset).value_or(witness_scan_budget));
        for (std::uint64_t k = 0; k < limit; ++k) {
            if (x.accepts(k + stem) && !y.accepts(k + stem)) {
                offset = k;
                break;
            }
        }
        const Natural value = offset + stem;
        if (!x.accepts(value) || y.accepts(value)) {
            throw std::logic_error("nfa_subset: witness does not separate");
        }
        return RelationVerdict{false, WitnessLength{value, derivation_for(value, stem, basis)}};
    }
    return RelationVerdict{true, std::nullopt};
}

RelationVerdict nfa_equal(const ChrobakNF& c1, const ChrobakNF& c2, std::uint64_t guard) {
    RelationVerdict a = nfa_subset(c1, c2, guard);
    RelationVerdict b = nfa_subset(c2, c1, guard);
    if (a.holds && b.holds) {
        return a;
    }
    if (a.holds) {
        return b;
    }
    if (b.holds) {
        return a;
    }
    return b.witness->value < a.witness->value ? b : a;
}

RelationVerdict nfa_universal(const ChrobakNF& c, std::uint64_t guard) {
    return nfa_subset(ChrobakNF::parse("", {"1"}), c, guard);
}

// ---------------------------------------------------------------------------
// Density test

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

DensityAccumulator::DensityAccumulator(Mode mode, std::size_t n) : mode_(mode) {
    if (mode_ == Mode::Modular) {
        const auto count =
            static_cast<std::size_t>(std::ceil(5.0 * std::sqrt(static_cast<double>(n)))) + 2;
        primes_ = first_primes_ge(count, 2).primes;
        sm_.assign(primes_.size(), 0);
        pm_.assign(primes_.size(), 1);
    }
}

void DensityAccumulator::add(std::uint64_t accepting, std::uint64_t length) {
    if (mode_ == Mode::Exact) {
        s_ = s_ * length + Natural(accepting) * p_;
        p_ *= length;
        return;
    }
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const auto l = primes_[i];
        sm_[i] = (mulmod(sm_[i], length % l, l) + mulmod(accepting % l, pm_[i], l)) % l;
        pm_[i] = mulmod(pm_[i], length % l, l);
    }
}

bool DensityAccumulator::equals_one() const {
    if (mode_ == Mode::Exact) {
        return s_ == p_;
    }
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (sm_[i] != pm_[i]) {
            return false;
        }
    }
    return true;
}

bool ufa_universal(const ChrobakNF& c, UniversalMode mode) {
    require_unambiguous(c, "ufa_universal");
    if (!c.stem().all()) {
        return false;
    }
    DensityAccumulator acc(mode, c.total_states());
    for (const auto& cyc : c.cycles()) {
        acc.add(cyc.count(), cyc.size());
    }
    return acc.equals_one();
}

// ---------------------------------------------------------------------------
// Inclusion

ChrobakNF strided(const ChrobakNF& u2, const Natural& v, std::uint64_t w) {
    const Natural base = v - u2.stem_length();
    if (base < 0) {
        throw std::invalid_argument("strided: v below the stem");
    }
    std::vector<Bits> cycles;
    for (const auto& cyc : u2.cycles()) {
        const std::uint64_t len = cyc.size();
        const std::uint64_t period = len / gcd(len, w);
        const auto start = static_cast<std::uint64_t>(base % len);
        const std::uint64_t stride = w % len;
        Bits out(period);
        std::uint64_t pos = start;
        for (std::uint64_t i = 0; i < period; ++i) {
            out.set(i, cyc[pos]);
            pos = (pos + stride) % len;
        }
        cycles.push_back(std::move(out));
    }
    return ChrobakNF(Bits{}, std::move(cycles));
}

namespace {

// Least i rejected by the (non-universal) unambiguous automaton `u`, which
// has an empty stem.
Natural least_rejected(const ChrobakNF& u) {
    // Every rejected length has a representative below stem + lcm.
    const std::uint64_t span = to_size(cycle_lcm(u)).value_or(witness_scan_budget);
    const std::uint64_t limit =
        std::min<std::uint64_t>(witness_scan_budget, u.stem_length() + span);
    for (std::uint64_t i = 0; i < limit; ++i) {
        if (!u.accepts(i)) {
            return Natural(i);
        }
    }
    const ChrobakNF comp = complement_ufa(u);
    for (std::size_t l = 0; l < comp.stem_length(); ++l) {
        if (comp.stem()[l]) {
            return Natural(l);
        }
    }
    std::optional<std::size_t> best;
    for (const auto& cyc : comp.cycles()) {
        for (std::size_t j = 0; j < cyc.size(); ++j) {
            if (cyc[j]) {
                best = std::min(best.value_or(j), j);
                break;
            }
        }
    }
    if (!best) {
        throw std::logic_error("least_rejected: automaton is universal");
    }
    return Natural(comp.stem_length() + *best);
}

}  // namespace

RelationVerdict ufa_inclusion(const ChrobakNF& u1, const ChrobakNF& u2) {
    require_unambiguous(u2, "ufa_inclusion");
    const std::size_t s1 = u1.stem_length();
    const std::size_t s2 = u2.stem_length();
    const std::size_t n0 = std::max(s1, s2);
    // Group (i): short lengths.
    for (std::size_t l = 0; l < n0; ++l) {
        if (u1.accepts(static_cast<std::uint64_t>(l)) && !u2.accepts(static_cast<std::uint64_t>(l))) {
            return RelationVerdict{false, WitnessLength{Natural(l), std::nullopt}};
        }
    }
    // Group (ii): one progression v + w*i per accepting cycle position.
    std::optional<WitnessLength> best;
    for (const auto& cyc : u1.cycles()) {
        const std::uint64_t w = cyc.size();
        for (std::uint64_t a = 0; a < w; ++a) {
            if (!cyc[a]) {
                continue;
            }
            Natural v = Natural(s1) + a;
            if (v < Natural(n0)) {
                const Natural gap = Natural(n0) - v;
                v += ((gap + w - 1) / w) * w;
            }
            const ChrobakNF probe = strided(u2, v, w);
            if (ufa_universal(probe)) {
                continue;
            }
            const Natural value = v + least_rejected(probe) * w;
            if (!best || value < best->value) {
                best = WitnessLength{value, std::vector<ResidueClass>{ResidueClass(w, v)}};
            }
        }
    }
    if (best) {
        if (!u1.accepts(best->value) || u2.accepts(best->value)) {
            throw std::logic_error("ufa_inclusion: witness does not separate");
        }
        return RelationVerdict{false, std::move(best)};
    }
    return RelationVerdict{true, std::nullopt};
}

}  // namespace unary
