#pragma once

#include "cyp/ode/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyp {

struct CyCondition {
    int index = 0;
    bool pass = false;
    std::string detail;
};

struct CyReport {
    std::vector<CyCondition> conditions;  // 1..5
    bool all_pass() const;
    std::vector<int> failed() const;
};

// The five conditions for order-4 operators: MUM origin, the coefficient
// identity in monic d/dz form, positive rational symmetric exponents at
// infinity, integral holomorphic solution, integral instantons after
// normalization. An optional rescale is applied first.
CyReport cy_check(const DifferentialOperator &op, int terms = 50,
                  const std::optional<Rational> &rescale = std::nullopt);

// Polynomial form of the coefficient identity after clearing denominators;
// zero exactly when condition (2) holds.
Poly cy_identity_defect(const DifferentialOperator &op);

} // namespace cyp
