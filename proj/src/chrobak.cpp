#include "unary/chrobak.hpp"

#include <algorithm>
#include <stdexcept>

#include "unary/errors.hpp"

namespace unary {

namespace {

// States reachable from `from` along `succ`.
Bits reach(const std::vector<std::vector<State>>& succ, const std::vector<State>& from) {
    Bits seen(succ.size());
    std::vector<State> stack(from.begin(), from.end());
    for (auto q : from) {
        seen.set(q);
    }
    while (!stack.empty()) {
        const State q = stack.back();
        stack.pop_back();
        for (auto r : succ[q]) {
            if (!seen[r]) {
                seen.set(r);
                stack.push_back(r);
            }
        }
    }
    return seen;
}

// Restriction to states that are reachable and co-reachable. Same language.
UnaryNfa trim(const UnaryNfa& a) {
    const std::size_t n = a.num_states();
    std::vector<std::vector<State>> pred(n);
    for (State q = 0; q < n; ++q) {
        for (auto r : a.succ(q)) {
            pred[r].push_back(q);
        }
    }
    const Bits fwd = reach(a.successors(), a.starts());
    const Bits bwd = reach(pred, a.accepts());
    std::vector<State> index(n, 0);
    std::size_t m = 0;
    for (State q = 0; q < n; ++q) {
        if (fwd[q] && bwd[q]) {
            index[q] = static_cast<State>(m++);
        }
    }
    auto useful = [&](State q) { return fwd[q] && bwd[q]; };
    std::vector<State> starts;
    std::vector<State> accepts;
    std::vector<std::vector<State>> succ(m);
    for (State q = 0; q < n; ++q) {
        if (!useful(q)) {
            continue;
        }
        for (auto r : a.succ(q)) {
            if (useful(r)) {
                succ[index[q]].push_back(index[r]);
            }
        }
    }
    for (auto q : a.starts()) {
        if (useful(q)) {
            starts.push_back(index[q]);
        }
    }
    for (auto q : a.accepts()) {
        if (useful(q)) {
            accepts.push_back(index[q]);
        }
    }
    return UnaryNfa(m, std::move(starts), std::move(accepts), std::move(succ));
}

Bits step(const UnaryNfa& a, const Bits& current) {
    Bits next(a.num_states());
    for (State q = 0; q < a.num_states(); ++q) {
        if (current[q]) {
            for (auto r : a.succ(q)) {
                next.set(r);
            }
        }
    }
    return next;
}

bool accepting(const UnaryNfa& a, const Bits& current) {
    for (auto q : a.accepts()) {
        if (current[q]) {
            return true;
        }
    }
    return false;
}

std::size_t checked_size(const Natural& n, std::size_t guard, const char* what) {
    if (n > Natural(guard)) {
        throw GuardExceeded(std::string(what) + " " + to_decimal(n) + " exceeds guard " +
                            std::to_string(guard));
    }
    return static_cast<std::size_t>(n);
}

}  // namespace

SccSummary scc_summary(const UnaryNfa& a) {
    // Iterative Tarjan.
    const std::size_t n = a.num_states();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<State> stack;
    SccSummary out;
    out.component_of.assign(n, 0);
    std::size_t counter = 0;

    struct Frame {
        State q;
        std::size_t next_edge;
    };
    for (State root = 0; root < n; ++root) {
        if (index[root] != unvisited) {
            continue;
        }
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = a.succ(f.q);
            if (f.next_edge < succ.size()) {
                const State r = succ[f.next_edge++];
                if (index[r] == unvisited) {
                    index[r] = low[r] = counter++;
                    stack.push_back(r);
                    on_stack[r] = true;
                    call.push_back({r, 0});
                } else if (on_stack[r]) {
                    low[f.q] = std::min(low[f.q], index[r]);
                }
                continue;
            }
            const State q = f.q;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().q] = std::min(low[call.back().q], low[q]);
            }
            if (low[q] == index[q]) {
                std::vector<State> comp;
                State r;
                do {
                    r = stack.back();
                    stack.pop_back();
                    on_stack[r] = false;
                    out.component_of[r] = out.components.size();
                    comp.push_back(r);
                } while (r != q);
                std::sort(comp.begin(), comp.end());
                out.components.push_back(std::move(comp));
            }
        }
    }

    // Period: gcd of level[u] + 1 - level[v] over edges inside the component.
    out.period_of.assign(out.components.size(), std::nullopt);
    std::vector<std::size_t> level(n, unvisited);
    for (std::size_t c = 0; c < out.components.size(); ++c) {
        const auto& comp = out.components[c];
        const State root = comp.front();
        level[root] = 0;
        std::vector<State> queue{root};
        std::uint64_t g = 0;
        bool has_edge = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const State u = queue[head];
            for (auto v : a.succ(u)) {
                if (out.component_of[v] != c) {
                    continue;
                }
                has_edge = true;
                if (level[v] == unvisited) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                } else {
                    const auto lu = static_cast<std::int64_t>(level[u]);
                    const auto lv = static_cast<std::int64_t>(level[v]);
                    const auto diff = lu + 1 - lv;
                    g = gcd(g, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
                }
            }
        }
        if (has_edge) {
            out.period_of[c] = static_cast<std::size_t>(g);
        }
    }
    return out;
}

ChrobakNF nfa_to_chrobak(const UnaryNfa& input, std::size_t guard) {
    const std::size_t n = input.num_states();
    const UnaryNfa a = trim(input);
    if (a.starts().empty()) {
        return ChrobakNF{};
    }
    const std::size_t stem_length = n * n;
    const SccSummary scc = scc_summary(a);
    std::vector<std::size_t> periods;
    for (const auto& p : scc.period_of) {
        if (p) {
            periods.push_back(*p);
        }
    }
    std::sort(periods.begin(), periods.end());
    periods.erase(std::unique(periods.begin(), periods.end()), periods.end());

    if (periods.empty()) {
        return ChrobakNF(membership_bits(a, stem_length), {});
    }
    Natural big_g = 1;
    for (auto p : periods) {
        big_g = lcm(big_g, Natural(p));
    }
    const std::size_t g_all = checked_size(big_g, guard, "lcm of component periods");

    Bits acc(stem_length + g_all);
    Bits current(a.num_states());
    for (auto q : a.starts()) {
        current.set(q);
    }
    Bits at_stem;
    for (std::size_t len = 0; len < stem_length + g_all; ++len) {
        if (len == stem_length) {
            at_stem = current;
        }
        acc.set(len, accepting(a, current));
        current = step(a, current);
    }
    if (current != at_stem) {
        throw std::logic_error("nfa_to_chrobak: subset trajectory not periodic past n*n");
    }

    Bits stem(stem_length);
    for (std::size_t i = 0; i < stem_length; ++i) {
        stem.set(i, acc[i]);
    }
    std::vector<Bits> cycles;
    for (auto g : periods) {
        Bits cyc(g, true);
        for (std::size_t t = 0; t < g_all; ++t) {
            if (!acc[stem_length + t]) {
                cyc.set(t % g, false);
            }
        }
        cycles.push_back(std::move(cyc));
    }
    bool covered = true;
    for (std::size_t t = 0; t < g_all && covered; ++t) {
        if (!acc[stem_length + t]) {
            continue;
        }
        covered = std::any_of(cycles.begin(), cycles.end(),
                              [&](const Bits& cyc) { return cyc[t % cyc.size()]; });
    }
    if (!covered) {
        Bits exact(g_all);
        for (std::size_t t = 0; t < g_all; ++t) {
            exact.set(t, acc[stem_length + t]);
        }
        cycles.assign(1, std::move(exact));
    }
    return normalize(ChrobakNF(std::move(stem), std::move(cycles)));
}

ChrobakNF extend_stem(const ChrobakNF& c) {
    Bits stem = c.stem();
    bool entry = false;
    std::vector<Bits> cycles;
    cycles.reserve(c.cycles().size());
    for (const auto& cyc : c.cycles()) {
        entry = entry || cyc[0];
        cycles.push_back(cyc.rotated_left(1));
    }
    stem.push_back(entry);
    return ChrobakNF(std::move(stem), std::move(cycles));
}

ChrobakNF extend_stem(const ChrobakNF& c, std::size_t target_length) {
    if (c.stem_length() >= target_length) {
        return c;
    }
    const std::size_t extra = target_length - c.stem_length();
    Bits stem = c.stem();
    stem.resize(target_length);
    for (std::size_t i = c.stem_length(); i < target_length; ++i) {
        stem.set(i, c.accepts(static_cast<std::uint64_t>(i)));
    }
    std::vector<Bits> cycles;
    cycles.reserve(c.cycles().size());
    for (const auto& cyc : c.cycles()) {
        cycles.push_back(cyc.rotated_left(extra % cyc.size()));
    }
    return ChrobakNF(std::move(stem), std::move(cycles));
}

std::pair<ChrobakNF, ChrobakNF> equalize_stems(const ChrobakNF& c1, const ChrobakNF& c2) {
    const std::size_t s = std::max(c1.stem_length(), c2.stem_length());
    return {extend_stem(c1, s), extend_stem(c2, s)};
}

ChrobakNF normalize(const ChrobakNF& c) {
    std::vector<Bits> cycles;
    for (const auto& cyc : c.cycles()) {
        if (cyc.none()) {
            continue;
        }
        auto same = std::find_if(cycles.begin(), cycles.end(),
                                 [&](const Bits& b) { return b.size() == cyc.size(); });
        if (same != cycles.end()) {
            *same |= cyc;
        } else {
            cycles.push_back(cyc);
        }
    }
    return ChrobakNF(c.stem(), std::move(cycles));
}

Natural cycle_lcm(const ChrobakNF& c) {
    Natural l = 1;
    for (const auto& cyc : c.cycles()) {
        l = lcm(l, Natural(cyc.size()));
    }
    return l;
}

ChrobakNF determinize(const ChrobakNF& c, std::size_t guard) {
    if (c.cycles().size() <= 1) {
        return c;
    }
    const std::size_t len = checked_size(cycle_lcm(c), guard, "determinized cycle length");
    Bits cyc(len);
    for (std::size_t t = 0; t < len; ++t) {
        for (const auto& b : c.cycles()) {
            if (b[t % b.size()]) {
                cyc.set(t);
                break;
            }
        }
    }
    return ChrobakNF(c.stem(), {std::move(cyc)});
}

}  // namespace unary
