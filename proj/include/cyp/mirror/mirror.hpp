#pragma once

#include "cyp/ode/operator.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace cyp {

struct MirrorMap {
    QSeries g;       // in z, g(0) = 0
    QSeries q;       // c2 z exp(g), in z
    QSeries z_of_q;  // inverse, in q
    Rational c2 = 1;
};

MirrorMap mirror_map(const DifferentialOperator &op, int N, const Rational &c2 = 1);

// dL/L = -A_{r-1} / (2 z A_r), L = c1 prod (b z - a)^e over roots a/b in lowest
// terms, when every pole is simple and rational. A fractional e drops the
// constant (-a)^e from the series.
struct YukawaB {
    bool closed_form = false;
    std::vector<std::pair<Rational, Rational>> factors;  // (root, exponent)
    QSeries series;  // L / c1 expanded at the origin
    std::string str() const;
};

YukawaB yukawa_B(const DifferentialOperator &op, int N = 50);

// kappa(q) = (d log z / d log q)^3 L / f0^2 in the coordinate q.
QSeries yukawa_A(const DifferentialOperator &op, const Rational &c1, const Rational &c2, int N);

struct InstantonTable {
    Rational h3;               // constant term of kappa
    std::vector<Rational> N;   // N[d-1] = N_d
    std::vector<Rational> n;   // n[d-1] = n_d
    Rational c1 = 1, c2 = 1, m = 1;

    std::string text() const;
};

InstantonTable gw_gv(const QSeries &kappa);
// Inverse of gw_gv: kappa coefficients from H^3 and n_d.
QSeries resum_gv(const Rational &h3, const std::vector<Rational> &n, size_t order, const std::string &var = "q");
std::vector<Rational> gw_from_gv(const std::vector<Rational> &n);
std::vector<Rational> gv_from_gw(const std::vector<Rational> &N);

struct Normalization {
    Rational c1, c2, m = 1;
    InstantonTable table;
    QSeries kappa;
};

// Chooses c2 = +-prod p^e with bounded numerator and denominator so that the
// n_d have a stable common denominator, then c1 = +-m * that denominator with
// the sign making the constant term positive. Ties go to the smaller
// denominator, then numerator, then a positive first nonzero n_d, then c2 > 0.
Normalization normalize_instantons(const DifferentialOperator &op, int N = 50, long search_bound = 1L << 20);

// 2 kappa_a(q^2) = kappa_b(q) through q^(N-1).
bool relation_check(const QSeries &kappa_a, const QSeries &kappa_b, int N);

// Formal expressions in t, q = e^t, 1/(2 pi i) and zeta(3).
struct FormalKey {
    int q = 0;       // power of q
    int t = 0;       // power of t
    int tau = 0;     // power of (2 pi i)
    int zeta = 0;    // power of zeta(3)
    auto operator<=>(const FormalKey &) const = default;
};
using FormalSum = std::map<FormalKey, Rational>;

struct CentralChargeCheck {
    FormalSum Z;         // central charge of O_Y
    FormalSum residual;  // Z + (H^3/6 s^3 + c2H/24 s + c3 zeta(3)/(2 pi i)^3), s = t/(2 pi i)
    bool polynomial_part_zero = false;
    int leading_q = 0;   // lowest q power in the residual, 0 when it vanishes
    FormalSum leading;   // residual terms at that power
};

CentralChargeCheck central_charge_check(const Rational &h3, const Rational &c2h, const Rational &c3,
                                        const std::vector<Rational> &Nd, int N);
std::string to_string(const FormalSum &s);

} // namespace cyp
