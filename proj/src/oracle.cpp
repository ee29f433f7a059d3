#include "unary/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "unary/errors.hpp"

namespace unary {

namespace {

using StateSet = std::vector<State>;

class Stepper {
public:
    explicit Stepper(const UnaryNfa& a) : a_(a), mark_(a.num_states(), 0) {}

    StateSet step(const StateSet& from) {
        StateSet out;
        ++stamp_;
        for (auto q : from) {
            for (auto r : a_.succ(q)) {
                if (mark_[r] != stamp_) {
                    mark_[r] = stamp_;
                    out.push_back(r);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool accepting(const StateSet& s) const {
        return std::any_of(s.begin(), s.end(), [&](State q) { return a_.is_accepting(q); });
    }

private:
    const UnaryNfa& a_;
    std::vector<std::uint64_t> mark_;
    std::uint64_t stamp_ = 0;
};

}  // namespace

bool TrajectoryResult::accepts(std::size_t l) const {
    if (l < bits.size()) {
        return bits[l];
    }
    if (!exact) {
        throw Inexact("trajectory not exact beyond " + std::to_string(bits.size()));
    }
    return bits[threshold + (l - threshold) % period];
}

TrajectoryResult oracle_bits(const UnaryNfa& a, std::size_t cap) {
    TrajectoryResult result;
    Stepper stepper(a);
    const StateSet start = a.starts();

    // Brent: the hare walks the trajectory once, recording acceptance bits.
    Bits hare_bits;
    StateSet tortoise = start;
    StateSet hare = start;
    hare_bits.push_back(stepper.accepting(hare));
    hare = stepper.step(hare);
    hare_bits.push_back(stepper.accepting(hare));
    std::size_t steps = 1;
    std::size_t power = 1;
    std::size_t lambda = 1;
    while (tortoise != hare) {
        if (steps >= cap) {
            result.bits = std::move(hare_bits);
            result.bits.resize(std::min(result.bits.size(), cap));
            result.exact = false;
            return result;
        }
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = stepper.step(hare);
        hare_bits.push_back(stepper.accepting(hare));
        ++steps;
        ++lambda;
    }

    // Threshold: walk two pointers lambda apart from the start.
    StateSet slow = start;
    StateSet fast = start;
    for (std::size_t i = 0; i < lambda; ++i) {
        fast = stepper.step(fast);
    }
    std::size_t mu = 0;
    while (slow != fast) {
        slow = stepper.step(slow);
        fast = stepper.step(fast);
        ++mu;
    }
    result.threshold = mu;
    result.period = lambda;
    result.exact = true;
    hare_bits.resize(mu + lambda);
    result.bits = std::move(hare_bits);
    return result;
}

TrajectoryResult oracle_bits(const ChrobakNF& c, std::size_t cap) {
    return oracle_bits(chrobak_to_nfa(c), cap);
}

RelationVerdict oracle_relation(Relation rel, const TrajectoryResult& a,
                                const TrajectoryResult& b, std::size_t window_guard) {
    if (rel == Relation::Universal) {
        return oracle_universal(a);
    }
    if (!a.exact || !b.exact) {
        throw Inexact("oracle_relation needs exact trajectories");
    }
    const std::size_t lcm_periods = std::lcm(a.period, b.period);
    const std::size_t window = std::max(a.threshold, b.threshold) + lcm_periods;
    if (lcm_periods > window_guard || window > window_guard) {
        throw GuardExceeded("oracle comparison window exceeds guard");
    }
    for (std::size_t l = 0; l < window; ++l) {
        const bool x = a.accepts(l);
        const bool y = b.accepts(l);
        const bool fails = rel == Relation::Subset ? (x && !y) : (x != y);
        if (fails) {
            return RelationVerdict{false, WitnessLength{Natural(l), std::nullopt}};
        }
    }
    return RelationVerdict{true, std::nullopt};
}

RelationVerdict oracle_universal(const TrajectoryResult& a) {
    if (!a.exact) {
        throw Inexact("oracle_universal needs an exact trajectory");
    }
    for (std::size_t l = 0; l < a.bits.size(); ++l) {
        if (!a.bits[l]) {
            return RelationVerdict{false, WitnessLength{Natural(l), std::nullopt}};
        }
    }
    return RelationVerdict{true, std::nullopt};
}

RelationVerdict oracle_universal_scan(const UnaryNfa& a, std::size_t cap) {
    Stepper stepper(a);
    StateSet tortoise = a.starts();
    StateSet hare = a.starts();
    if (!stepper.accepting(hare)) {
        return RelationVerdict{false, WitnessLength{Natural(0), std::nullopt}};
    }
    std::size_t length = 0;
    std::size_t power = 1;
    std::size_t lambda = 0;
    do {
        if (length >= cap) {
            throw Inexact("universality scan did not close within cap");
        }
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = stepper.step(hare);
        ++length;
        ++lambda;
        if (!stepper.accepting(hare)) {
            return RelationVerdict{false, WitnessLength{Natural(length), std::nullopt}};
        }
    } while (tortoise != hare);
    // The trajectory has closed: every later subset repeats an earlier one.
    return RelationVerdict{true, std::nullopt};
}

// A rejected length must be rejected by every cycle, so only the rejecting
// positions of the cycle with the fewest of them are tried, over one full
// period (the lcm of the cycle lengths). Candidates are visited in
// increasing order, so the first hit is the least rejected length.
RelationVerdict oracle_universal_scan(const ChrobakNF& c, std::size_t cap) {
    const std::size_t stem = c.stem_length();
    for (std::size_t l = 0; l < stem; ++l) {
        if (!c.stem()[l]) {
            return RelationVerdict{false, WitnessLength{Natural(l), std::nullopt}};
        }
    }
    const auto& cycles = c.cycles();
    if (cycles.empty()) {
        return RelationVerdict{false, WitnessLength{Natural(stem), std::nullopt}};
    }
    std::size_t period = 1;
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        period = std::lcm(period, cycles[i].size());
        if (period > cap) {
            throw Inexact("universality scan did not close within cap");
        }
        const auto rejecting = [&](std::size_t j) { return cycles[j].size() - cycles[j].count(); };
        if (rejecting(i) * cycles[pivot].size() < rejecting(pivot) * cycles[i].size()) {
            pivot = i;
        }
    }
    const Bits& base = cycles[pivot];
    std::vector<std::size_t> zeros;
    for (std::size_t j = 0; j < base.size(); ++j) {
        if (!base[j]) {
            zeros.push_back(j);
        }
    }
    for (std::size_t block = 0; block < period; block += base.size()) {
        for (std::size_t j : zeros) {
            const std::size_t k = block + j;
            const bool accepted = std::any_of(cycles.begin(), cycles.end(), [&](const Bits& cyc) {
                return cyc[k % cyc.size()];
            });
            if (!accepted) {
                return RelationVerdict{false, WitnessLength{Natural(stem + k), std::nullopt}};
            }
        }
    }
    return RelationVerdict{true, std::nullopt};
}

std::optional<std::vector<bool>> brute_sat(const CnfInstance& c) {
    if (c.num_vars > brute_sat_max_vars) {
        throw TooLarge("brute_sat supports at most 25 variables");
    }
    const std::size_t n = c.num_vars;
    std::vector<bool> assignment(n, false);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        // x1 is the most significant position so the order is lexicographic.
        for (std::size_t v = 0; v < n; ++v) {
            assignment[v] = ((k >> (n - 1 - v)) & 1U) != 0;
        }
        if (c.satisfied_by(assignment)) {
            return assignment;
        }
    }
    return std::nullopt;
}

std::size_t minimal_period(const Bits& bits, std::size_t threshold) {
    const std::size_t n = bits.size();
    for (std::size_t p = 1; threshold + 2 * p <= n; ++p) {
        bool ok = true;
        for (std::size_t l = threshold; l + p < n; ++l) {
            if (bits[l] != bits[l + p]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return p;
        }
    }
    throw NoPeriodInWindow("no period visible in window");
}

}  // namespace unary
