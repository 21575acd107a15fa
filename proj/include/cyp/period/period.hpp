#pragma once

#include "cyp/exact/laurent.hpp"
#include "cyp/exact/series.hpp"

#include <array>
#include <string>

namespace cyp {

struct TorusSpec {
    std::array<Rational, 4> radii{Rational(1), Rational(1), Rational(1), Rational(1)};
    Rational a_bound = 0;
};

// P(y; a) with the target truncation order N in a.
struct CTProblem {
    LaurentPolynomial P;
    TorusSpec torus;
    int order = 40;
};

// h(y1..y4)/(y1 y2 y3 y4) for the built-in quartic with b = c = 1.
LaurentPolynomial affine_equation(const std::string &preset = "dn-31-1");
CTProblem preset_problem(const std::string &preset, int order);

struct Decomposition {
    Rational c0;
    LaurentPolynomial V; // P = c0 (1 - V)
};

Decomposition decompose(const CTProblem &problem);

// Is there a nonzero nonnegative integer combination of the vectors equal to zero?
// Bounded enumeration with coefficients up to 4 * count.
bool has_balanced_combination(const std::vector<std::array<int, 4>> &vectors);

enum class CTEngine { Auto, Exact, Modular };

struct CTStats {
    CTEngine engine = CTEngine::Auto;
    long iterations = 0;       // fixpoint sweeps (exact engine)
    long iteration_bound = 0;  // N (2B+1) 4
    long states = 0;           // stored exponent states summed over a-degrees
    int primes = 0;            // moduli used (modular engine)
    long bits = 0;             // bit bound on the scaled integers (modular engine)
};

// CT_y[1/P] truncated at a-order N.
QSeries constant_term_series(const CTProblem &problem, CTEngine engine = CTEngine::Auto,
                             CTStats *stats = nullptr);

// Series in a with vanishing odd part -> series in z = a^2.
QSeries even_reduction(const QSeries &s, const std::string &var = "z");

// s / s[0]
QSeries normalized(const QSeries &s);

namespace detail {

// Engine input shared by the exact and modular engines.
struct CTMonomial {
    std::array<int, 4> e{};
    int k = 0; // a-degree
    Rational c;
};

struct CTConstraint {
    std::array<int, 4> w{};
    long long h = 0; // feasible at remaining budget R iff -w.e * scale <= R * h
};

struct CTSetup {
    int order = 0;
    std::vector<CTMonomial> positive; // a-degree >= 1
    std::vector<CTMonomial> zero;     // a-degree 0
    std::vector<CTConstraint> constraints;
    long long scale = 1;
    int box = 0; // N * B
};

CTSetup make_setup(const Decomposition &dec, int order);
bool feasible(const CTSetup &s, const std::array<int, 4> &e, int remaining);

// Returns CT of S_d (before dividing by c0) for d < order.
std::vector<Rational> exact_engine(const CTSetup &s, CTStats &stats);
std::vector<Rational> modular_engine(const CTSetup &s, CTStats &stats);
bool modular_engine_applicable(const CTSetup &s);

} // namespace detail

} // namespace cyp
