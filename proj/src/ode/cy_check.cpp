#include "cyp/ode/cy_check.hpp"
#include "cyp/error.hpp"
#include "cyp/mirror/mirror.hpp"

#include <algorithm>

namespace cyp {

bool CyReport::all_pass() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](auto &c) { return c.pass; });
}

std::vector<int> CyReport::failed() const
{
    std::vector<int> f;
    for (auto &c : conditions)
        if (!c.pass)
            f.push_back(c.index);
    return f;
}

Poly cy_identity_defect(const DifferentialOperator &op)
{
    if (op.order() != 4)
        input_error("bad-order", "the coefficient identity is for order-4 operators");
    // a_i = b_i / D in monic d/dz form
    auto b = to_weyl(op);
    const Poly &D = b[4];
    const Poly &b1 = b[1], &b2 = b[2], &b3 = b[3];
    Poly D1 = D.derivative(), D2 = D1.derivative();
    Poly b2p = b2.derivative(), b3p = b3.derivative(), b3pp = b3p.derivative();
    // D^3 (a1 - 1/2 a2 a3 + 1/8 a3^3 - a2' + 3/4 a3 a3' + 1/2 a3'')
    Poly lhs = b1 * D * D;
    Poly rhs = Rational(1, 2) * b2 * b3 * D - Rational(1, 8) * b3 * b3 * b3 + (b2p * D - b2 * D1) * D -
               Rational(3, 4) * b3 * (b3p * D - b3 * D1) -
               Rational(1, 2) * (b3pp * D * D - Rational(2) * b3p * D1 * D - b3 * D2 * D + Rational(2) * b3 * D1 * D1);
    return lhs - rhs;
}

CyReport cy_check(const DifferentialOperator &op_in, int terms, const std::optional<Rational> &rescale)
{
    if (op_in.order() != 4)
        input_error("bad-order", "the conditions apply to order-4 operators");
    DifferentialOperator op = rescale ? transform(op_in, {Move::rescale(*rescale)}) : op_in;
    CyReport rep;

    MumClass mc = mum_check(op, SingularPoint::at(0));
    rep.conditions.push_back({1, mc == MumClass::MUM, "origin: " + to_string(mc)});

    Poly defect = cy_identity_defect(op);
    rep.conditions.push_back({2, defect.is_zero(), defect.is_zero() ? "identity holds" : "defect " + defect.str()});

    Indicial inf = indicial(op, SingularPoint::infinity());
    bool c3 = inf.exact && inf.roots.size() == 4;
    std::string d3 = "exponents at infinity:";
    for (auto &r : inf.roots) {
        c3 = c3 && r.sign() > 0;
        d3 += " " + r.str();
    }
    c3 = c3 && inf.roots[0] + inf.roots[3] == inf.roots[1] + inf.roots[2];
    rep.conditions.push_back({3, c3, d3});

    CyCondition c4{4, false, ""};
    if (mc == MumClass::MUM) {
        QSeries f = holomorphic_solution(op, terms);
        c4.pass = true;
        for (size_t n = 0; n < f.order(); ++n)
            if (!f[n].is_integer()) {
                c4.pass = false;
                c4.detail = "coefficient of " + op.var() + "^" + std::to_string(n) + " is " + f[n].str();
                break;
            }
        if (c4.pass)
            c4.detail = "integral through " + op.var() + "^" + std::to_string(terms - 1);
    } else {
        c4.detail = "no MUM origin";
    }
    rep.conditions.push_back(c4);

    CyCondition c5{5, false, ""};
    if (mc == MumClass::MUM) {
        try {
            auto nz = normalize_instantons(op, terms);
            c5.pass = true;
            c5.detail = "c2 = " + nz.c2.str() + ", c1 = " + nz.c1.str();
        } catch (const Error &e) {
            c5.detail = e.what();
        }
    } else {
        c5.detail = "no MUM origin";
    }
    rep.conditions.push_back(c5);
    return rep;
}

} // namespace cyp
