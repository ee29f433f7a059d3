#ifndef UNARY_CNF_HPP
#define UNARY_CNF_HPP

#include <cstddef>
#include <vector>

namespace unary {

/// CNF formula: literals are nonzero signed variable indices in
/// [-num_vars, num_vars].
struct CnfInstance {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;

    /// Throws std::invalid_argument on a zero literal, an out-of-range
    /// literal, or an empty clause.
    void validate() const;

    /// Occurrence count per variable, indexed 1..num_vars (entry 0 unused).
    std::vector<std::size_t> occurrences() const;
    bool is_three_occur() const;

    bool satisfied_by(const std::vector<bool>& assignment) const;

    friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

}  // namespace unary

#endif  // UNARY_CNF_HPP
