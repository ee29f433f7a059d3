#include "unary/automaton.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "unary/errors.hpp"

namespace unary {

namespace {

void sort_unique(std::vector<State>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_ids(const std::vector<State>& ids, std::size_t n, const char* what) {
    for (auto q : ids) {
        if (q >= n) {
            throw std::invalid_argument(std::string(what) + " state id " + std::to_string(q) +
                                        " out of range");
        }
    }
}

struct VectorHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
        std::size_t h = v.size();
        for (auto x : v) {
            h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace

UnaryNfa::UnaryNfa(std::size_t num_states, std::vector<State> starts, std::vector<State> accepts,
                   std::vector<std::vector<State>> succ)
    : num_states_(num_states),
      starts_(std::move(starts)),
      accepts_(std::move(accepts)),
      succ_(std::move(succ)),
      accepting_(num_states) {
    if (succ_.size() > num_states_) {
        throw std::invalid_argument("successor map has more entries than states");
    }
    succ_.resize(num_states_);
    sort_unique(starts_);
    sort_unique(accepts_);
    check_ids(starts_, num_states_, "start");
    check_ids(accepts_, num_states_, "accepting");
    for (auto& s : succ_) {
        sort_unique(s);
        check_ids(s, num_states_, "successor");
    }
    for (auto q : accepts_) {
        accepting_.set(q);
    }
}

UnaryNfa UnaryNfa::from_edges(std::size_t num_states, std::vector<State> starts,
                              std::vector<State> accepts,
                              std::span<const std::pair<State, State>> edges) {
    std::vector<std::vector<State>> succ(num_states);
    for (auto [u, v] : edges) {
        if (u >= num_states) {
            throw std::invalid_argument("edge source out of range");
        }
        succ[u].push_back(v);
    }
    return UnaryNfa(num_states, std::move(starts), std::move(accepts), std::move(succ));
}

std::size_t UnaryNfa::num_edges() const noexcept {
    std::size_t n = 0;
    for (const auto& s : succ_) {
        n += s.size();
    }
    return n;
}

ChrobakNF::ChrobakNF(Bits stem, std::vector<Bits> cycles)
    : stem_(std::move(stem)), cycles_(std::move(cycles)) {
    for (const auto& c : cycles_) {
        if (c.empty()) {
            throw std::invalid_argument("Chrobak cycle must have length >= 1");
        }
    }
}

ChrobakNF ChrobakNF::parse(std::string_view stem,
                           std::initializer_list<std::string_view> cycles) {
    std::vector<Bits> cs;
    for (auto c : cycles) {
        cs.push_back(Bits::from_string(c));
    }
    return ChrobakNF(Bits::from_string(stem), std::move(cs));
}

std::size_t ChrobakNF::cycle_states() const noexcept {
    std::size_t n = 0;
    for (const auto& c : cycles_) {
        n += c.size();
    }
    return n;
}

bool ChrobakNF::accepts(std::uint64_t length) const noexcept {
    if (length < stem_.size()) {
        return stem_[length];
    }
    const std::uint64_t rel = length - stem_.size();
    for (const auto& c : cycles_) {
        if (c[rel % c.size()]) {
            return true;
        }
    }
    return false;
}

bool ChrobakNF::accepts(const Natural& length) const {
    if (length < Natural(stem_.size())) {
        return stem_[static_cast<std::size_t>(length)];
    }
    const Natural rel = length - stem_.size();
    for (const auto& c : cycles_) {
        if (c[static_cast<std::size_t>(rel % c.size())]) {
            return true;
        }
    }
    return false;
}

bool ChrobakNF::is_normalized() const noexcept {
    std::vector<std::size_t> lengths;
    for (const auto& c : cycles_) {
        if (c.none()) {
            return false;
        }
        lengths.push_back(c.size());
    }
    std::sort(lengths.begin(), lengths.end());
    return std::adjacent_find(lengths.begin(), lengths.end()) == lengths.end();
}

bool WitnessLength::consistent() const {
    if (!derivation) {
        return true;
    }
    return std::all_of(derivation->begin(), derivation->end(),
                       [&](const ResidueClass& rc) { return rc.contains(value); });
}

Bits membership_bits(const UnaryNfa& a, std::size_t upto) {
    Bits out(upto);
    Bits current(a.num_states());
    for (auto q : a.starts()) {
        current.set(q);
    }
    for (std::size_t len = 0; len < upto; ++len) {
        bool accepted = false;
        Bits next(a.num_states());
        for (State q = 0; q < a.num_states(); ++q) {
            if (!current[q]) {
                continue;
            }
            accepted = accepted || a.is_accepting(q);
            for (auto r : a.succ(q)) {
                next.set(r);
            }
        }
        out.set(len, accepted);
        current = std::move(next);
    }
    return out;
}

Bits membership_bits(const ChrobakNF& c, std::size_t upto) {
    Bits out(upto);
    for (std::size_t len = 0; len < upto; ++len) {
        out.set(len, c.accepts(static_cast<std::uint64_t>(len)));
    }
    return out;
}

UnaryNfa chrobak_to_nfa(const ChrobakNF& c) {
    const std::size_t s = c.stem_length();
    const std::size_t n = c.total_states();
    std::vector<std::vector<State>> succ(n);
    std::vector<State> starts;
    std::vector<State> accepts;
    std::vector<State> entries;
    std::size_t base = s;
    for (const auto& cyc : c.cycles()) {
        entries.push_back(static_cast<State>(base));
        for (std::size_t j = 0; j < cyc.size(); ++j) {
            const auto q = static_cast<State>(base + j);
            succ[q].push_back(static_cast<State>(base + (j + 1) % cyc.size()));
            if (cyc[j]) {
                accepts.push_back(q);
            }
        }
        base += cyc.size();
    }
    for (std::size_t i = 0; i < s; ++i) {
        if (c.stem()[i]) {
            accepts.push_back(static_cast<State>(i));
        }
        if (i + 1 < s) {
            succ[i].push_back(static_cast<State>(i + 1));
        } else {
            succ[i] = entries;
        }
    }
    if (s > 0) {
        starts.push_back(0);
    } else {
        starts = entries;
    }
    return UnaryNfa(n, std::move(starts), std::move(accepts), std::move(succ));
}

AmbiguityReport ambiguity_chrobak(const ChrobakNF& c) {
    AmbiguityReport report;
    const Natural stem(c.stem_length());
    std::optional<WitnessLength> best;
    const auto& cycles = c.cycles();
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (std::size_t j = i + 1; j < cycles.size(); ++j) {
            const std::size_t p = cycles[i].size();
            const std::size_t q = cycles[j].size();
            const std::size_t g = gcd(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q));
            // Accepting offsets of cycle j bucketed by residue mod g.
            std::vector<std::vector<std::size_t>> by_residue(g);
            for (std::size_t b = 0; b < q; ++b) {
                if (cycles[j][b]) {
                    by_residue[b % g].push_back(b);
                }
            }
            for (std::size_t a = 0; a < p; ++a) {
                if (!cycles[i][a]) {
                    continue;
                }
                for (auto b : by_residue[a % g]) {
                    const ResidueClass classes[] = {ResidueClass(p, a), ResidueClass(q, b)};
                    const auto x = crt_solve(classes);
                    const Natural value = stem + x->residue;
                    if (!best || value < best->value) {
                        best = WitnessLength{value,
                                             std::vector<ResidueClass>{
                                                 ResidueClass(p, stem + a),
                                                 ResidueClass(q, stem + b)}};
                    }
                }
            }
        }
    }
    if (best) {
        report.verdict = Ambiguity::Ambiguous;
        report.witness = std::move(best);
    }
    return report;
}

AmbiguityReport ambiguity_nfa(const UnaryNfa& a, std::size_t max_steps) {
    if (max_steps < 1) {
        throw std::invalid_argument("ambiguity_nfa needs max_steps >= 1");
    }
    AmbiguityReport report;
    report.bound_used = max_steps;
    const std::size_t n = a.num_states();
    // Sparse capped counts, encoded as (state << 2) | count with count in {1, 2}.
    std::vector<std::uint64_t> current;
    for (auto q : a.starts()) {
        current.push_back((std::uint64_t{q} << 2) | 1U);
    }
    std::unordered_set<std::vector<std::uint64_t>, VectorHash> seen;
    std::vector<std::uint8_t> dense(n, 0);
    std::vector<State> touched;
    for (std::size_t len = 0; len < max_steps; ++len) {
        unsigned accepting_runs = 0;
        for (auto e : current) {
            if (a.is_accepting(static_cast<State>(e >> 2))) {
                accepting_runs += static_cast<unsigned>(e & 3U);
            }
        }
        if (accepting_runs >= 2) {
            report.verdict = Ambiguity::Ambiguous;
            report.witness = WitnessLength{Natural(len), std::nullopt};
            return report;
        }
        if (!seen.insert(current).second) {
            report.verdict = Ambiguity::Unambiguous;
            return report;
        }
        touched.clear();
        for (auto e : current) {
            const auto q = static_cast<State>(e >> 2);
            const auto cnt = static_cast<std::uint8_t>(e & 3U);
            for (auto r : a.succ(q)) {
                if (dense[r] == 0) {
                    touched.push_back(r);
                }
                dense[r] = static_cast<std::uint8_t>(std::min<unsigned>(2U, dense[r] + cnt));
            }
        }
        std::sort(touched.begin(), touched.end());
        current.clear();
        for (auto r : touched) {
            current.push_back((std::uint64_t{r} << 2) | dense[r]);
            dense[r] = 0;
        }
    }
    report.verdict = Ambiguity::UnknownBeyondBound;
    return report;
}

bool is_unambiguous(const ChrobakNF& c) {
    return ambiguity_chrobak(c).verdict == Ambiguity::Unambiguous;
}

void require_unambiguous(const ChrobakNF& c, const char* operation) {
    const auto report = ambiguity_chrobak(c);
    if (report.verdict == Ambiguity::Ambiguous) {
        const std::string w = to_decimal(report.witness->value);
        throw AmbiguousInput(std::string(operation) + ": input is ambiguous (length " + w +
                                 " has two accepting runs)",
                             w);
    }
}

}  // namespace unary
