#include "unary/regops.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

#include "unary/chrobak.hpp"
#include "unary/errors.hpp"

namespace unary {

std::size_t state_count(const ChrobakNF& c) { return c.total_states(); }
std::size_t state_count(const UnaryNfa& a) { return a.num_states(); }

// ---------------------------------------------------------------------------
// Complement

namespace {

enum class Coverage { None, Partial, All };

// Acceptance pattern of one cycle restricted to residue classes modulo each
// divisor g of its length.
class CycleProfile {
public:
    explicit CycleProfile(const Bits& cycle) : cycle_(cycle) {}

    std::size_t length() const noexcept { return cycle_.size(); }

    Coverage coverage(std::size_t g, std::size_t r) {
        auto& table = tables_[g];
        if (table.empty()) {
            table.assign(g, 0);
            std::vector<std::size_t> hits(g, 0);
            for (std::size_t j = 0; j < cycle_.size(); ++j) {
                if (cycle_[j]) {
                    ++hits[j % g];
                }
            }
            const std::size_t per_class = cycle_.size() / g;
            for (std::size_t i = 0; i < g; ++i) {
                table[i] = hits[i] == 0 ? 0 : (hits[i] == per_class ? 2 : 1);
            }
        }
        return static_cast<Coverage>(table[r]);
    }

private:
    const Bits& cycle_;
    std::unordered_map<std::size_t, std::vector<std::uint8_t>> tables_;
};

class ComplementDescent {
public:
    ComplementDescent(const std::vector<Bits>& cycles, std::size_t max_depth, std::size_t guard)
        : max_depth_(max_depth), guard_(guard) {
        for (const auto& c : cycles) {
            profiles_.emplace_back(c);
        }
    }

    void run(const ResidueNode& node) {
        if (node.depth > max_depth_) {
            throw RecursionOverflow("complement recursion deeper than " +
                                    std::to_string(max_depth_));
        }
        std::optional<std::size_t> pick;
        bool touched = false;
        for (std::size_t i = 0; i < profiles_.size(); ++i) {
            auto& prof = profiles_[i];
            const auto len = prof.length();
            const auto g = static_cast<std::size_t>(gcd(node.d, Natural(len)));
            const auto r = static_cast<std::size_t>(node.k % g);
            switch (prof.coverage(g, r)) {
                case Coverage::All:
                    return;
                case Coverage::Partial:
                    touched = true;
                    if (!pick || len < profiles_[*pick].length()) {
                        pick = i;
                    }
                    break;
                case Coverage::None:
                    break;
            }
        }
        if (!touched) {
            emit(node.d, node.k);
            return;
        }
        const Natural d2 = lcm(node.d, Natural(profiles_[*pick].length()));
        const Natural steps = d2 / node.d;
        for (Natural s = 0; s < steps; ++s) {
            run(ResidueNode{d2, node.k + s * node.d, node.depth + 1});
        }
    }

    std::vector<Bits> cycles() const {
        std::vector<Bits> out;
        for (const auto& [len, residues] : emitted_) {
            Bits cyc(len);
            for (auto k : residues) {
                cyc.set(k);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

private:
    void emit(const Natural& d, const Natural& k) {
        const auto len = to_size(d);
        if (!len || *len > guard_) {
            throw GuardExceeded("complement cycle of length " + to_decimal(d) +
                                " exceeds guard " + std::to_string(guard_));
        }
        auto [it, inserted] = emitted_.try_emplace(*len);
        if (inserted) {
            total_ += *len;
            if (total_ > guard_) {
                throw GuardExceeded("complement exceeds " + std::to_string(guard_) +
                                    " cycle states");
            }
        }
        it->second.push_back(static_cast<std::size_t>(k));
    }

    std::vector<CycleProfile> profiles_;
    std::size_t max_depth_;
    std::size_t guard_;
    std::size_t total_ = 0;
    std::map<std::size_t, std::vector<std::size_t>> emitted_;
};

std::size_t guarded_size(const Natural& n, std::size_t guard, const char* what) {
    const auto s = to_size(n);
    if (!s || *s > guard) {
        throw GuardExceeded(std::string(what) + " " + to_decimal(n) + " exceeds guard " +
                            std::to_string(guard));
    }
    return *s;
}

}  // namespace

ChrobakNF complement_ufa(const ChrobakNF& c, std::size_t guard) {
    require_unambiguous(c, "complement_ufa");
    const std::size_t n = std::max<std::size_t>(c.total_states(), 2);
    ComplementDescent descent(c.cycles(), ceil_log2(Natural(n)) + 2, guard);
    descent.run(ResidueNode{});
    return ChrobakNF(~c.stem(), descent.cycles());
}

// ---------------------------------------------------------------------------
// Products and unions

UnaryNfa intersect(const UnaryNfa& a, const UnaryNfa& b) {
    const std::size_t nb = b.num_states();
    std::unordered_map<std::uint64_t, State> id;
    std::vector<std::pair<State, State>> pairs;
    auto lookup = [&](State p, State q) {
        const std::uint64_t key = std::uint64_t{p} * nb + q;
        auto [it, inserted] = id.try_emplace(key, static_cast<State>(pairs.size()));
        if (inserted) {
            pairs.emplace_back(p, q);
        }
        return it->second;
    };
    std::vector<State> starts;
    for (auto p : a.starts()) {
        for (auto q : b.starts()) {
            starts.push_back(lookup(p, q));
        }
    }
    std::vector<std::vector<State>> succ;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [p, q] = pairs[i];
        std::vector<State> out;
        for (auto p2 : a.succ(p)) {
            for (auto q2 : b.succ(q)) {
                out.push_back(lookup(p2, q2));
            }
        }
        succ.push_back(std::move(out));
    }
    std::vector<State> accepts;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (a.is_accepting(pairs[i].first) && b.is_accepting(pairs[i].second)) {
            accepts.push_back(static_cast<State>(i));
        }
    }
    return UnaryNfa(pairs.size(), std::move(starts), std::move(accepts), std::move(succ));
}

ChrobakNF intersect(const ChrobakNF& a, const ChrobakNF& b, std::size_t guard) {
    auto [x, y] = equalize_stems(a, b);
    std::vector<Bits> cycles;
    std::size_t total = 0;
    for (const auto& p : x.cycles()) {
        for (const auto& q : y.cycles()) {
            const std::size_t len =
                guarded_size(lcm(Natural(p.size()), Natural(q.size())), guard, "product cycle");
            total += len;
            if (total > guard) {
                throw GuardExceeded("product exceeds " + std::to_string(guard) + " cycle states");
            }
            Bits cyc(len);
            for (std::size_t t = 0; t < len; ++t) {
                cyc.set(t, p[t % p.size()] && q[t % q.size()]);
            }
            cycles.push_back(std::move(cyc));
        }
    }
    return normalize(ChrobakNF(x.stem() & y.stem(), std::move(cycles)));
}

UnaryNfa disjoint_union(const UnaryNfa& a, const UnaryNfa& b) {
    const auto shift = static_cast<State>(a.num_states());
    std::vector<std::vector<State>> succ = a.successors();
    for (const auto& s : b.successors()) {
        std::vector<State> moved;
        for (auto q : s) {
            moved.push_back(q + shift);
        }
        succ.push_back(std::move(moved));
    }
    std::vector<State> starts = a.starts();
    for (auto q : b.starts()) {
        starts.push_back(q + shift);
    }
    std::vector<State> accepts = a.accepts();
    for (auto q : b.accepts()) {
        accepts.push_back(q + shift);
    }
    return UnaryNfa(a.num_states() + b.num_states(), std::move(starts), std::move(accepts),
                    std::move(succ));
}

ChrobakNF disjoint_union(const ChrobakNF& a, const ChrobakNF& b) {
    auto [x, y] = equalize_stems(a, b);
    std::vector<Bits> cycles = x.cycles();
    cycles.insert(cycles.end(), y.cycles().begin(), y.cycles().end());
    return ChrobakNF(x.stem() | y.stem(), std::move(cycles));
}

ChrobakNF union_ufa(const ChrobakNF& c1, const ChrobakNF& c2, std::size_t guard) {
    require_unambiguous(c1, "union_ufa");
    require_unambiguous(c2, "union_ufa");
    return normalize(disjoint_union(c1, intersect(complement_ufa(c1, guard), c2, guard)));
}

ChrobakNF symdiff_ufa(const ChrobakNF& c1, const ChrobakNF& c2, std::size_t guard) {
    require_unambiguous(c1, "symdiff_ufa");
    require_unambiguous(c2, "symdiff_ufa");
    const ChrobakNF left = intersect(c1, complement_ufa(c2, guard), guard);
    const ChrobakNF right = intersect(c2, complement_ufa(c1, guard), guard);
    return normalize(disjoint_union(left, right));
}

// ---------------------------------------------------------------------------
// Star and concatenation

ChrobakNF dfa_from_bits(const Bits& bits, std::size_t from, std::size_t period) {
    if (period == 0 || bits.size() < from + period) {
        throw std::invalid_argument("dfa_from_bits: window shorter than from + period");
    }
    std::size_t p = period;
    for (std::size_t cand = 1; cand < period; ++cand) {
        if (period % cand != 0) {
            continue;
        }
        bool ok = true;
        for (std::size_t t = 0; t < period && ok; ++t) {
            ok = bits[from + t] == bits[from + (t + cand) % period];
        }
        if (ok) {
            p = cand;
            break;
        }
    }
    std::size_t t = from;
    while (t > 0 && bits[t - 1] == bits[t - 1 + p]) {
        --t;
    }
    Bits cycle(p);
    for (std::size_t i = 0; i < p; ++i) {
        cycle.set(i, bits[t + i]);
    }
    Bits stem(t);
    for (std::size_t i = 0; i < t; ++i) {
        stem.set(i, bits[i]);
    }
    if (cycle.none()) {
        std::size_t end = t;
        while (end > 0 && !stem[end - 1]) {
            --end;
        }
        stem.resize(end);
        return ChrobakNF(std::move(stem), {});
    }
    return ChrobakNF(std::move(stem), {std::move(cycle)});
}

ChrobakNF star(const UnaryNfa& a) {
    const std::size_t n = a.num_states();
    // A shortest nonempty accepted word has at most n letters.
    const Bits low = membership_bits(a, n + 1);
    std::size_t m = 0;
    for (std::size_t l = 1; l <= n; ++l) {
        if (low[l]) {
            m = l;
            break;
        }
    }
    if (m == 0) {
        return ChrobakNF(Bits::from_string("1"), {});
    }
    // Least element of L in each class mod m; each lies below n*m, since
    // the product with an m-counter has n*m states.
    const Bits bits = membership_bits(a, n * m + 1);
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> weight(m, none);
    for (std::size_t l = 1; l < bits.size(); ++l) {
        if (bits[l] && weight[l % m] == none) {
            weight[l % m] = l;
        }
    }
    // Least element of L* in each class mod m: shortest paths over Z_m.
    std::vector<std::size_t> dist(m, none);
    using Item = std::pair<std::size_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[0] = 0;
    queue.emplace(0, 0);
    while (!queue.empty()) {
        const auto [du, u] = queue.top();
        queue.pop();
        if (du != dist[u]) {
            continue;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (weight[r] == none) {
                continue;
            }
            const std::size_t v = (u + r) % m;
            if (du + weight[r] < dist[v]) {
                dist[v] = du + weight[r];
                queue.emplace(dist[v], v);
            }
        }
    }
    std::size_t top = 0;
    for (auto d : dist) {
        if (d != none) {
            top = std::max(top, d);
        }
    }
    Bits closure(top + m);
    for (std::size_t l = 0; l < closure.size(); ++l) {
        const auto d = dist[l % m];
        closure.set(l, d != none && l >= d);
    }
    return dfa_from_bits(closure, top, m);
}

UnaryNfa concat_nfa(const UnaryNfa& a, const UnaryNfa& b) {
    const auto shift = static_cast<State>(a.num_states());
    auto accepts_empty = [](const UnaryNfa& x) {
        return std::any_of(x.starts().begin(), x.starts().end(),
                           [&](State q) { return x.is_accepting(q); });
    };
    std::vector<State> entry;
    for (auto q : b.starts()) {
        for (auto r : b.succ(q)) {
            entry.push_back(r + shift);
        }
    }
    std::vector<std::vector<State>> succ = a.successors();
    for (auto f : a.accepts()) {
        succ[f].insert(succ[f].end(), entry.begin(), entry.end());
    }
    for (const auto& s : b.successors()) {
        std::vector<State> moved;
        for (auto q : s) {
            moved.push_back(q + shift);
        }
        succ.push_back(std::move(moved));
    }
    std::vector<State> starts = a.starts();
    if (accepts_empty(a)) {
        for (auto q : b.starts()) {
            starts.push_back(q + shift);
        }
    }
    std::vector<State> accepts;
    for (auto q : b.accepts()) {
        accepts.push_back(q + shift);
    }
    if (accepts_empty(b)) {
        accepts.insert(accepts.end(), a.accepts().begin(), a.accepts().end());
    }
    return UnaryNfa(a.num_states() + b.num_states(), std::move(starts), std::move(accepts),
                    std::move(succ));
}

ChrobakNF concat_via_bits(const ChrobakNF& c1, const ChrobakNF& c2, std::size_t guard) {
    Natural period = lcm(cycle_lcm(c1), cycle_lcm(c2));
    const Natural window_big =
        Natural(c1.stem_length()) + c2.stem_length() + 2 * period + 2;
    const std::size_t window = guarded_size(window_big, guard, "convolution window");
    const auto p = static_cast<std::size_t>(period);
    const Bits x = membership_bits(c1, window);
    const Bits y = membership_bits(c2, window);
    std::vector<std::size_t> ys;
    for (std::size_t j = 0; j < window; ++j) {
        if (y[j]) {
            ys.push_back(j);
        }
    }
    Bits conv(window);
    for (std::size_t i = 0; i < window; ++i) {
        if (!x[i]) {
            continue;
        }
        for (auto j : ys) {
            if (i + j >= window) {
                break;
            }
            conv.set(i + j);
        }
    }
    return dfa_from_bits(conv, c1.stem_length() + c2.stem_length() + p, p);
}

// ---------------------------------------------------------------------------
// Structured intersection

namespace {

// For each residue l < M, the index of the unique cycle accepting at a
// position ≡ l (mod M), if any.
std::vector<std::optional<std::size_t>> residue_owners(const ChrobakNF& c, std::size_t m,
                                                       const char* side) {
    std::vector<std::optional<std::size_t>> owner(m);
    for (std::size_t i = 0; i < c.cycles().size(); ++i) {
        const Bits& cyc = c.cycles()[i];
        if (cyc.size() % m != 0) {
            throw StructureViolation(std::string(side) + ": cycle length " +
                                     std::to_string(cyc.size()) + " not divisible by modulus " +
                                     std::to_string(m));
        }
        for (std::size_t t = 0; t < cyc.size(); ++t) {
            if (!cyc[t]) {
                continue;
            }
            auto& o = owner[t % m];
            if (o && *o != i) {
                throw StructureViolation(std::string(side) + ": residue " + std::to_string(t % m) +
                                         " accepted by two cycles");
            }
            o = i;
        }
    }
    return owner;
}

}  // namespace

ChrobakNF structured_intersection(const ChrobakNF& c1, const ChrobakNF& c2, std::size_t modulus) {
    if (modulus == 0) {
        throw StructureViolation("modulus must be >= 1");
    }
    auto [x, y] = equalize_stems(c1, c2);
    const auto own_a = residue_owners(x, modulus, "first input");
    const auto own_b = residue_owners(y, modulus, "second input");
    std::vector<Bits> cycles;
    for (std::size_t l = 0; l < modulus; ++l) {
        if (!own_a[l] || !own_b[l]) {
            continue;
        }
        const Bits& a = x.cycles()[*own_a[l]];
        const Bits& b = y.cycles()[*own_b[l]];
        const auto len = static_cast<std::size_t>(lcm(Natural(a.size()), Natural(b.size())));
        Bits e(len);
        for (std::size_t t = l; t < len; t += modulus) {
            e.set(t, a[t % a.size()] && b[t % b.size()]);
        }
        if (e.any()) {
            cycles.push_back(std::move(e));
        }
    }
    return ChrobakNF(x.stem() & y.stem(), std::move(cycles));
}

}  // namespace unary
