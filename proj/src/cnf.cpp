#include "unary/cnf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace unary {

void CnfInstance::validate() const {
    for (const auto& clause : clauses) {
        if (clause.empty()) {
            throw std::invalid_argument("empty clause");
        }
        for (int lit : clause) {
            if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > num_vars) {
                throw std::invalid_argument("literal out of range: " + std::to_string(lit));
            }
        }
    }
}

std::vector<std::size_t> CnfInstance::occurrences() const {
    std::vector<std::size_t> occ(num_vars + 1, 0);
    for (const auto& clause : clauses) {
        for (int lit : clause) {
            ++occ.at(static_cast<std::size_t>(std::abs(lit)));
        }
    }
    return occ;
}

bool CnfInstance::is_three_occur() const {
    for (auto n : occurrences()) {
        if (n > 3) {
            return false;
        }
    }
    return true;
}

bool CnfInstance::satisfied_by(const std::vector<bool>& assignment) const {
    for (const auto& clause : clauses) {
        bool sat = false;
        for (int lit : clause) {
            const bool value = assignment.at(static_cast<std::size_t>(std::abs(lit)) - 1);
            if ((lit > 0) == value) {
                sat = true;
                break;
            }
        }
        if (!sat) {
            return false;
        }
    }
    return true;
}

}  // namespace unary
