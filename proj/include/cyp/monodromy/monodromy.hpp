#pragma once

#include "cyp/exact/matrix.hpp"
#include "cyp/frobenius/frobenius.hpp"
#include "cyp/ode/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyp {

using CMatrix = Matrix<Complex>;

CMatrix inverse(const CMatrix &m);
Real max_abs(const CMatrix &m);
CMatrix to_complex(const QMatrix &m);

// Polyline from `base` through `waypoints`; each step is at most theta times
// the distance from its center to the nearest finite singularity.
struct PathPlan {
    Complex base;
    std::vector<Complex> waypoints;
    Rational theta{1, 2};
    std::string descriptor;
};

PathPlan reversed(const PathPlan &p);

// Matrix mapping the jet (f, f', ..., f^(r-1)) at the start of the path to
// the jet at its end.
CMatrix transport(const DifferentialOperator &op, const PathPlan &path, long precision, int order = 60);

struct MonodromyOptions {
    long precision = 512;
    Rational theta{1, 2};
    Rational basepoint{-1, 10};
    int order = 60;
    long den_bound = 1000000;
};

// Loop based at the basepoint: along the real axis, passing below any
// singular point in the way, once counterclockwise around `point` on a circle
// of half the distance to the nearest other singularity, and back. The loop
// around infinity is a clockwise circle of radius 2 max |singularity|.
PathPlan loop_path(const DifferentialOperator &op, const SingularPoint &point, const MonodromyOptions &opt);

struct MonodromyResult {
    SingularPoint point;
    std::string path;
    CMatrix scaled;    // acting on the column of MUM scaled basis solutions
    CMatrix numeric;   // same loop in the standard-form basis
    QMatrix exact;     // entrywise reconstruction of `numeric`
    Real residual;     // max |numeric - exact|
    bool reconstructed = false;
    std::string failure;
};

struct MonodromyReport {
    std::vector<MonodromyResult> loops;
    std::optional<SingularPoint> conifold;  // point fixing the standard form
    CMatrix basis_change;                   // F = B yhat
    long precision = 0;
};

// Loops in the standard-form basis: the MUM scaled basis changed by a
// polynomial in log T0 so that the conifold loop differs from the identity in
// its first row only. Loops run concurrently.
MonodromyReport monodromy(const DifferentialOperator &op, const std::vector<SingularPoint> &points,
                          const MonodromyOptions &opt = {});
MonodromyResult loop_monodromy(const DifferentialOperator &op, const SingularPoint &point,
                               const MonodromyOptions &opt = {});

// Singular points in the order used by the composite relation: product of the
// finite loops in this order equals the inverse of the loop around infinity.
std::vector<SingularPoint> declared_loop_order(const DifferentialOperator &op);

// Continued-fraction convergent within tol with denominator <= bound.
Rational rational_reconstruct(const Complex &x, long den_bound, const Real &tol);

// (H^3, c2.H) from the conifold matrix (1, -c, 0, -d) in its first row.
std::pair<Rational, Rational> hms_invariants(const QMatrix &t_mum, const QMatrix &t_conifold);

// Nonzero antisymmetric Omega with M Omega M^T = Omega for every matrix,
// nondegenerate when possible.
std::optional<QMatrix> common_symplectic_form(const std::vector<QMatrix> &ms);

Poly charpoly(const QMatrix &m);
// For each rational eigenvalue, ranks of (M - lambda)^k, k = 1..n.
std::vector<std::pair<Rational, std::vector<size_t>>> jordan_type(const QMatrix &m);

// Searches G among short words in `generators` (and their inverses) with
// G a G^-1 = b; returns the word as indices (negative for inverses, 1-based).
std::optional<std::vector<int>> find_conjugator(const QMatrix &a, const QMatrix &b,
                                                const std::vector<QMatrix> &generators, int max_length = 2);

} // namespace cyp
