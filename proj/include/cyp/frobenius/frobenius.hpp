#pragma once

#include "cyp/exact/matrix.hpp"
#include "cyp/ode/operator.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cyp {

// The operator near a point in the local coordinate w (w = z - p, or w = 1/z
// at infinity), rescaled to the form sum_j w^j P_j(theta), theta = w d/dw,
// with P_0 the indicial polynomial.
struct LocalOperator {
    SingularPoint point;
    std::vector<Poly> P;
};

LocalOperator local_operator(const DifferentialOperator &op, const SingularPoint &p);

// w^exponent * sum_j (log w)^j S_j(w), times (2 pi i)^(-tau_power).
struct LocalSolution {
    SingularPoint point;
    Rational exponent;
    int depth = 0;
    std::vector<QSeries> S;
    int tau_power = 0;

    // Recurrence data used to extend the series numerically: coefficient
    // rows coeffs[n][m] of w^(base + n) (log w)^m / m!, n counted from base.
    std::shared_ptr<const LocalOperator> local;
    Rational base;
    std::vector<std::vector<Rational>> coeffs;

    std::string coordinate() const;
};

// Sorted by exponent, then log depth.
struct FrobeniusBasis {
    SingularPoint point;
    std::vector<LocalSolution> solutions;
};

// Basis of solutions at a rational point or infinity, each series carrying
// N coefficients. Log-free members are in reduced echelon form on their
// leading coefficients; a member of depth d > 0 has as log multiplier
// (coefficient of log w, in the log^m/m! basis) another basis member.
FrobeniusBasis local_basis(const DifferentialOperator &op, const SingularPoint &p, int N);

// y_k = f0 u^k/k! + lower log terms with u = log z / (2 pi i).
FrobeniusBasis mum_scaled_basis(const DifferentialOperator &op, int N);

// Formal check, on log polynomials with 2 pi i as an indeterminate, that
// continuation log z -> log z + 2 pi i maps the column of basis members to
// T times that column.
bool continuation_matches(const FrobeniusBasis &b, const QMatrix &T);

// The unipotent matrix with rows (1,0,0,0), (1,1,0,0), (1/2,1,1,0), (1/6,1/2,1,1).
QMatrix standard_t0();

// Exact coefficients of the local operator applied to the solution,
// indexed from w^base; zero for every coefficient inside the truncation.
std::vector<std::vector<Rational>> residual(const LocalSolution &s);

struct Jet {
    std::vector<Complex> d;  // d[k] = k-th derivative in z
    Real tail;               // estimated truncation error of the value
    long terms = 0;
};

// Finite singular points at the working precision: the origin and the roots of A_r.
std::vector<Complex> finite_singularities(const DifferentialOperator &op);

// Distance in the local coordinate from the point to the nearest other singularity.
Real convergence_radius(const DifferentialOperator &op, const SingularPoint &p);

// Derivatives 0..count-1 with respect to z at z0, principal log in w.
Jet evaluate_jet(const DifferentialOperator &op, const LocalSolution &s, const Complex &z0, long bits,
                 int count = 4);

} // namespace cyp
