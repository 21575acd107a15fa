#include "cyp/io/json_io.hpp"
#include "cyp/error.hpp"

#include <fstream>
#include <sstream>

namespace cyp {

Json to_json(const Rational &r)
{
    return r.str();
}

Rational rational_from_json(const Json &j, const std::string &where)
{
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const Error &e) {
            input_error("malformed-input", where + ": " + e.what());
        }
    }
    if (j.is_number_integer())
        return Rational(j.get<long>());
    input_error("malformed-input", where + ": expected a \"p/q\" string");
}

namespace {

const Json &field(const Json &j, const char *key, const std::string &where)
{
    if (!j.is_object() || !j.contains(key))
        input_error("malformed-input", where + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::vector<Rational> rational_list(const Json &j, const std::string &where)
{
    if (!j.is_array())
        input_error("malformed-input", where + ": expected an array");
    std::vector<Rational> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Json rational_array(const std::vector<Rational> &v)
{
    Json a = Json::array();
    for (auto &x : v)
        a.push_back(x.str());
    return a;
}

} // namespace

Json to_json(const QSeries &s)
{
    return {{"variable", s.var()}, {"order", s.order()}, {"coeffs", rational_array(s.coeffs())}};
}

QSeries series_from_json(const Json &j)
{
    std::string var = j.is_object() && j.contains("variable") ? j.at("variable").get<std::string>() : "z";
    auto c = rational_list(field(j, "coeffs", "series"), "series.coeffs");
    if (j.contains("order")) {
        const Json &o = j.at("order");
        if (!o.is_number_integer() || o.get<long>() < 0)
            input_error("malformed-input", "series.order: expected a nonnegative integer");
        c.resize(static_cast<size_t>(o.get<long>()));
    }
    return QSeries(var, c);
}

Json to_json(const DifferentialOperator &op)
{
    Json coeffs = Json::array();
    for (auto &p : op.coeffs())
        coeffs.push_back(rational_array(p.coeffs()));
    return {{"variable", op.var()}, {"euler", true}, {"coeffs", coeffs}};
}

DifferentialOperator operator_from_json(const Json &j)
{
    if (j.is_object() && j.contains("euler") && !j.at("euler").get<bool>())
        input_error("malformed-input", "operator.euler: only D = z d/dz coefficients are supported");
    std::string var = j.is_object() && j.contains("variable") ? j.at("variable").get<std::string>() : "z";
    const Json &c = field(j, "coeffs", "operator");
    if (!c.is_array() || c.size() < 2)
        input_error("malformed-input", "operator.coeffs: expected at least two polynomials");
    std::vector<Poly> ps;
    for (size_t i = 0; i < c.size(); ++i)
        ps.emplace_back(rational_list(c[i], "operator.coeffs[" + std::to_string(i) + "]"));
    if (ps.back().is_zero())
        input_error("malformed-input", "operator.coeffs: leading coefficient is zero");
    return DifferentialOperator(ps, var);
}

Json to_json(const CTProblem &p)
{
    Json mons = Json::array();
    for (auto &[e, c] : p.P.terms())
        mons.push_back({{"y", {e[0], e[1], e[2], e[3]}}, {"a", e[kAIndex]}, {"c", c.str()}});
    Json radii = Json::array();
    for (auto &r : p.torus.radii)
        radii.push_back(r.str());
    return {{"order", p.order}, {"radii", radii}, {"a_bound", p.torus.a_bound.str()}, {"monomials", mons}};
}

CTProblem problem_from_json(const Json &j)
{
    CTProblem p;
    const Json &o = field(j, "order", "problem");
    if (!o.is_number_integer() || o.get<int>() < 1)
        input_error("malformed-input", "problem.order: expected a positive integer");
    p.order = o.get<int>();
    if (j.contains("radii")) {
        auto r = rational_list(j.at("radii"), "problem.radii");
        if (r.size() != 4)
            input_error("malformed-input", "problem.radii: expected four entries");
        for (size_t i = 0; i < 4; ++i)
            p.torus.radii[i] = r[i];
    }
    if (j.contains("a_bound"))
        p.torus.a_bound = rational_from_json(j.at("a_bound"), "problem.a_bound");
    const Json &m = field(j, "monomials", "problem");
    if (!m.is_array())
        input_error("malformed-input", "problem.monomials: expected an array");
    for (size_t i = 0; i < m.size(); ++i) {
        std::string w = "problem.monomials[" + std::to_string(i) + "]";
        const Json &y = field(m[i], "y", w);
        if (!y.is_array() || y.size() != 4)
            input_error("malformed-input", w + ".y: expected four exponents");
        Exponent e{};
        for (size_t k = 0; k < 4; ++k)
            e[k] = y[k].get<int>();
        e[kAIndex] = m[i].contains("a") ? m[i].at("a").get<int>() : 0;
        p.P.add_term(e, rational_from_json(field(m[i], "c", w), w + ".c"));
    }
    return p;
}

Json to_json(const QMatrix &m)
{
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (size_t k = 0; k < m.cols(); ++k)
            r.push_back(m(i, k).str());
        rows.push_back(r);
    }
    return rows;
}

QMatrix matrix_from_json(const Json &j)
{
    if (!j.is_array() || j.empty())
        input_error("malformed-input", "matrix: expected an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (size_t i = 0; i < j.size(); ++i) {
        rows.push_back(rational_list(j[i], "matrix[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows[0].size())
            input_error("malformed-input", "matrix: ragged rows");
    }
    return QMatrix::from_rows(rows);
}

Json to_json(const Complex &z, int digits)
{
    return {{"re", z.re.str(digits)}, {"im", z.im.str(digits)}};
}

Json to_json(const CMatrix &m, int digits)
{
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (size_t k = 0; k < m.cols(); ++k)
            r.push_back(to_json(m(i, k), digits));
        rows.push_back(r);
    }
    return rows;
}

Json to_json(const LocalSolution &s)
{
    Json S = Json::array();
    for (auto &x : s.S)
        S.push_back(to_json(x));
    return {{"point", s.point.label()},
            {"coordinate", s.coordinate()},
            {"exponent", s.exponent.str()},
            {"log_depth", s.depth},
            {"two_pi_i_power", -s.tau_power},
            {"log_coefficients", S}};
}

Json to_json(const InstantonTable &t)
{
    return {{"h3", t.h3.str()},
            {"c1", t.c1.str()},
            {"c2", t.c2.str()},
            {"m", t.m.str()},
            {"N", rational_array(t.N)},
            {"n", rational_array(t.n)}};
}

std::vector<Rational> gw_table_from_json(const Json &j)
{
    return rational_list(field(j, "N", "gw table"), "gw table.N");
}

Json to_json(const MonodromyResult &r)
{
    Json j = {{"point", r.point.label()}, {"path", r.path}};
    if (!r.failure.empty())
        j["failure"] = r.failure;
    if (r.numeric.rows()) {
        j["numeric"] = to_json(r.numeric, 30);
        j["scaled_basis"] = to_json(r.scaled, 30);
    }
    if (r.reconstructed) {
        j["exact"] = to_json(r.exact);
        j["residual"] = r.residual.str(6);
    }
    return j;
}

Json to_json(const ConifoldMatch &m)
{
    Json beta = Json::array();
    for (auto &b : m.beta)
        beta.push_back(to_json(b, 30));
    Json poly = Json::array();
    for (auto &b : m.poly)
        poly.push_back(to_json(b, 30));
    Json j = {{"start", to_json(m.start, 20)},
              {"end", to_json(m.end, 20)},
              {"precision", m.precision},
              {"beta", beta},
              {"c2", m.c2.str()},
              {"shift", to_json(m.shift, 30)},
              {"t_polynomial", poly}};
    if (m.mode) {
        j["mode"] = m.mode->str();
        j["lambda"] = to_json(m.lambda, 30);
        if (m.failure.empty()) {
            j["H3"] = m.h3.str();
            j["c2H"] = m.c2h.str();
            j["c3"] = m.c3.str();
            j["residual"] = m.residual.str(6);
        } else {
            j["failure"] = m.failure;
        }
        j["t2_coefficient"] = to_json(m.s2, 10);
    }
    return j;
}

Json to_json(const CyReport &r)
{
    Json c = Json::array();
    for (auto &x : r.conditions)
        c.push_back({{"condition", x.index}, {"pass", x.pass}, {"detail", x.detail}});
    return {{"all_pass", r.all_pass()}, {"conditions", c}};
}

Json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        input_error("missing-file", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error &e) {
        input_error("malformed-input", path + ": " + e.what());
    }
}

} // namespace cyp
