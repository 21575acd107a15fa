#pragma once

#include "cyp/frobenius/frobenius.hpp"
#include "cyp/monodromy/monodromy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyp {

// Nearest point to the origin with local exponents 0, 1, 1, 2.
std::optional<SingularPoint> conifold_point(const DifferentialOperator &op);

// The log multiplier f of the unique depth-1 solution at the conifold point
// (default: conifold_point), an exponent-1 series with leading coefficient 1.
LocalSolution conifold_period(const DifferentialOperator &op, int N = 30,
                              const std::optional<SingularPoint> &point = std::nullopt);

struct ScaleMode {
    enum Kind { FixH3, FixC3 };
    Kind kind = FixH3;
    Rational value = 0;
    std::string str() const;
};

struct ConifoldMatch {
    std::vector<Complex> beta;  // continued solution = sum beta_k yhat_k
    Complex start, end;         // transport segment
    long precision = 0;

    // The leading part sum beta_k s^k/k! rewritten in the mirror coordinate
    // t = (log|z| + g + log|c2|)/(2 pi i) = s + shift at the real endpoint;
    // poly[k] is the coefficient of t^k.
    Rational c2;
    Complex shift;
    std::vector<Complex> poly;

    std::optional<ScaleMode> mode;
    Complex lambda;
    Rational h3, c2h, c3;
    Complex s2;  // coefficient of t^2 after scaling, expected 0
    Real residual;  // largest reconstruction error
    std::string failure;
};

// Continues `f` (a solution local to a finite point) along the straight
// segment from half its local radius to half the origin's radius, and
// expands it in the MUM scaled basis. c2 defaults to the instanton
// normalization of the operator.
ConifoldMatch continue_to_mum(const DifferentialOperator &op, const LocalSolution &f, long precision = 512,
                              const std::optional<Rational> &c2 = std::nullopt);

// Fixes the scale and reads off H^3, c2.H, c3; tolerance 2^-128 unless given.
ConifoldMatch extract_invariants(const ConifoldMatch &m, const ScaleMode &mode,
                                 std::optional<Real> tol = std::nullopt, long den_bound = 1000000);

// Largest deviation of the rows of (M - I) from multiples of beta, relative
// to the size of the rows; M is the conifold loop in the MUM scaled basis.
Real reflection_defect(const std::vector<Complex> &beta, const CMatrix &M);

} // namespace cyp
