#pragma once

#include "cyp/exact/poly.hpp"
#include "cyp/exact/series.hpp"
#include "cyp/numeric/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyp {

// sum_i A_i(z) D^i with D = z d/dz, kept in normal form: no common polynomial
// factor, coprime integer coefficients, positive leading coefficient of A_r.
class DifferentialOperator {
public:
    DifferentialOperator() = default;
    explicit DifferentialOperator(std::vector<Poly> coeffs, std::string var = "z");

    int order() const { return static_cast<int>(a_.size()) - 1; }
    int degree() const;
    const Poly &coeff(int i) const { return a_.at(static_cast<size_t>(i)); }
    const std::vector<Poly> &coeffs() const { return a_; }
    const std::string &var() const { return var_; }

    friend bool operator==(const DifferentialOperator &a, const DifferentialOperator &b)
    {
        return a.a_ == b.a_;
    }
    std::string str() const;

private:
    std::vector<Poly> a_;
    std::string var_ = "z";
};

QSeries apply(const DifferentialOperator &op, const QSeries &s);

DifferentialOperator fit_operator(const QSeries &s, int max_order, int max_degree);

// Coefficients B_k of the same operator written as sum_k B_k(z) (d/dz)^k.
std::vector<Poly> to_weyl(const DifferentialOperator &op);
// Operator z^r sum_k B_k (d/dz)^k rewritten in D-form and normalized.
DifferentialOperator from_weyl(const std::vector<Poly> &b, const std::string &var = "z");

struct Move {
    enum Kind { InvertZ, Rescale, Shift, Gauge };
    Kind kind = InvertZ;
    Rational value = 0;

    static Move invert() { return {InvertZ, 0}; }
    static Move rescale(const Rational &l) { return {Rescale, l}; }
    static Move shift(const Rational &c) { return {Shift, c}; }
    static Move gauge(const Rational &g) { return {Gauge, g}; }
};

// Moves apply in the listed order.
//   invert_z:  new coordinate 1/z, D -> -D
//   rescale l: new coordinate l z
//   shift c:   new coordinate z + c
//   gauge g:   z^-g L z^g, D -> D + g
DifferentialOperator transform(const DifferentialOperator &op, const std::vector<Move> &moves);

// A point of P^1: infinity, a rational number, or a root of an irreducible
// rational polynomial (index selects the numeric root).
struct SingularPoint {
    enum Kind { Finite, Infinity, Algebraic };
    Kind kind = Finite;
    Rational value = 0;
    Poly minimal;       // for Algebraic
    Complex numeric;    // for Algebraic
    std::string label() const;

    static SingularPoint at(const Rational &v) { return {Finite, v, Poly(), Complex()}; }
    static SingularPoint infinity() { return {Infinity, 0, Poly(), Complex()}; }
};

struct Indicial {
    // Exact indicial polynomial (rational and infinite points), monic.
    std::optional<Poly> poly;
    std::vector<Rational> roots;          // with multiplicity, ascending; exact points only
    std::vector<Complex> numeric_roots;   // algebraic points, or irrational exponents
    bool exact = true;
};

Indicial indicial(const DifferentialOperator &op, const SingularPoint &p);

struct SchemeColumn {
    SingularPoint point;
    Indicial exponents;
    bool apparent_candidate = false;
};

using RiemannScheme = std::vector<SchemeColumn>;

// Columns for the roots of A_r (rational ascending, then algebraic) and infinity.
// Digits of precision for algebraic points.
RiemannScheme riemann_scheme(const DifferentialOperator &op, int digits = 64);
// Sum over columns of the exponent sums, exact points only.
Rational exponent_total(const RiemannScheme &scheme);

enum class MumClass { MUM, UnipotentNotMUM, QuasiUnipotent, Other };
std::string to_string(MumClass c);
MumClass mum_check(const DifferentialOperator &op, const SingularPoint &p);

// Preset operators: "dn-31-1-D", "dn-31-1-Dtilde", "quintic".
DifferentialOperator preset_operator(const std::string &name);

// Holomorphic solution at an MUM origin with constant term 1.
QSeries holomorphic_solution(const DifferentialOperator &op, int terms);

} // namespace cyp
