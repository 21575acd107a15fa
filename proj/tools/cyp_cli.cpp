#include "cyp/conifold/conifold.hpp"
#include "cyp/error.hpp"
#include "cyp/io/json_io.hpp"
#include "cyp/mirror/mirror.hpp"
#include "cyp/monodromy/monodromy.hpp"
#include "cyp/ode/cy_check.hpp"
#include "cyp/period/period.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#ifndef CYP_DATA_DIR
#define CYP_DATA_DIR "data"
#endif

using namespace cyp;

namespace {

constexpr const char *kVersion = "1.0.0";

struct Input {
    std::string preset;
    std::string op_file;
    std::string reference;
};

struct Report {
    Json manifest = Json::object();
    Json result = Json::object();
    std::ostringstream text;
};

long default_precision()
{
    if (const char *e = std::getenv("CYP_PRECISION_BITS")) {
        char *end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (!end || *end || v < 64)
            input_error("bad-precision", std::string("CYP_PRECISION_BITS='") + e + "' is not an integer >= 64");
        return v;
    }
    return 512;
}

SingularPoint parse_point(const std::string &s)
{
    if (s == "inf" || s == "infinity" || s == "oo")
        return SingularPoint::infinity();
    return SingularPoint::at(Rational::parse(s));
}

DifferentialOperator load_operator(const Input &in, Report &rep)
{
    if (!in.op_file.empty() && !in.preset.empty())
        input_error("bad-arguments", "give either --op or --preset, not both");
    if (!in.op_file.empty()) {
        rep.manifest["input"] = in.op_file;
        return operator_from_json(read_json_file(in.op_file));
    }
    std::string name = in.preset.empty() ? "dn-31-1-D" : in.preset;
    rep.manifest["input"] = "preset:" + name;
    return preset_operator(name);
}

// Bundled reference values for a preset, or an explicit file.
std::optional<Json> load_reference(const Input &in)
{
    std::string path = in.reference;
    if (path.empty() && !in.preset.empty()) {
        path = std::string(CYP_DATA_DIR) + "/reference/" + in.preset + ".json";
        if (!std::filesystem::exists(path))
            return std::nullopt;
    }
    if (path.empty())
        return std::nullopt;
    return read_json_file(path);
}

std::string series_text(const QSeries &s, size_t count)
{
    std::ostringstream os;
    for (size_t i = 0; i < std::min(count, s.order()); ++i) {
        if (s[i].is_zero())
            continue;
        os << (os.tellp() > 0 ? " + " : "") << "(" << s[i].str() << ")" << s.var() << "^" << i;
    }
    if (s.order() > count)
        os << " + ...";
    os << "  [O(" << s.var() << "^" << s.order() << ")]";
    return os.str();
}

std::string matrix_text(const QMatrix &m, const std::string &indent = "    ")
{
    std::vector<std::vector<std::string>> cells(m.rows());
    size_t w = 1;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            cells[i].push_back(m(i, j).str());
            w = std::max(w, cells[i].back().size());
        }
    std::ostringstream os;
    for (auto &row : cells) {
        os << indent;
        for (auto &c : row)
            os << std::setw(static_cast<int>(w) + 2) << c;
        os << "\n";
    }
    return os.str();
}

std::string cmatrix_text(const CMatrix &m, int digits, const std::string &indent = "    ")
{
    std::ostringstream os;
    for (size_t i = 0; i < m.rows(); ++i) {
        os << indent;
        for (size_t j = 0; j < m.cols(); ++j)
            os << "  " << m(i, j).str(digits);
        os << "\n";
    }
    return os.str();
}

// ---- periods ----------------------------------------------------------------

struct PeriodsOpts {
    std::string preset = "dn-31-1";
    std::string problem;
    int terms = 40;
    std::string engine = "auto";
    std::string out;
};

void run_periods(const PeriodsOpts &o, Report &rep)
{
    CTProblem p;
    if (!o.problem.empty()) {
        p = problem_from_json(read_json_file(o.problem));
        p.order = o.terms;
        rep.manifest["input"] = o.problem;
    } else {
        p = preset_problem(o.preset, o.terms);
        rep.manifest["input"] = "preset:" + o.preset;
    }
    rep.manifest["terms"] = o.terms;
    CTEngine eng = o.engine == "exact" ? CTEngine::Exact : o.engine == "modular" ? CTEngine::Modular : CTEngine::Auto;
    if (o.engine != "auto" && o.engine != "exact" && o.engine != "modular")
        input_error("bad-arguments", "--engine must be auto, exact or modular");
    CTStats st;
    QSeries a = normalized(constant_term_series(p, eng, &st));
    bool odd_zero = true;
    for (size_t n = 1; n < a.order(); n += 2)
        odd_zero = odd_zero && a[n].is_zero();
    Json r;
    r["engine"] = st.engine == CTEngine::Modular ? "modular" : "exact";
    r["a_series"] = to_json(a);
    r["odd_coefficients_zero"] = odd_zero;
    rep.text << "constant-term series, normalized (" << r["engine"].get<std::string>() << " engine)\n";
    rep.text << "  " << series_text(a, 12) << "\n";
    rep.text << "  odd coefficients through a^" << a.order() - 1 << ": " << (odd_zero ? "all zero" : "NOT all zero") << "\n";
    if (odd_zero) {
        QSeries z = even_reduction(a);
        r["z_series"] = to_json(z);
        rep.text << "  even part in z = a^2:\n  " << series_text(z, 8) << "\n";
        if (!o.out.empty()) {
            std::ofstream(o.out) << to_json(z).dump(2) << "\n";
            rep.text << "  wrote " << o.out << "\n";
        }
    }
    rep.result = r;
}

// ---- fit-ode ----------------------------------------------------------------

struct FitOpts {
    std::string series;
    int order = 4, degree = 6;
    bool even = false;
    std::string out;
};

void run_fit(const FitOpts &o, Report &rep)
{
    if (o.series.empty())
        input_error("bad-arguments", "--series FILE is required");
    rep.manifest["input"] = o.series;
    QSeries s = series_from_json(read_json_file(o.series));
    if (o.even)
        s = even_reduction(s);
    rep.manifest["terms"] = s.order();
    auto op = fit_operator(s, o.order, o.degree);
    rep.result["operator"] = to_json(op);
    rep.text << "annihilating operator (order " << o.order << ", degree " << o.degree << ", " << s.order()
             << " coefficients):\n  " << op.str() << "\n";
    if (!o.out.empty()) {
        std::ofstream(o.out) << to_json(op).dump(2) << "\n";
        rep.text << "  wrote " << o.out << "\n";
    }
}

// ---- scheme -----------------------------------------------------------------

void run_scheme(const Input &in, const std::string &mum_point, Report &rep)
{
    auto op = load_operator(in, rep);
    auto sch = riemann_scheme(op);
    Json cols = Json::array();
    rep.text << "Riemann scheme of " << op.str() << "\n";
    for (auto &c : sch) {
        Json col = {{"point", c.point.label()}};
        std::string ex;
        if (c.exponents.exact) {
            Json e = Json::array();
            for (auto &r : c.exponents.roots) {
                e.push_back(r.str());
                ex += (ex.empty() ? "" : ", ") + r.str();
            }
            col["exponents"] = e;
        } else {
            Json e = Json::array();
            for (auto &r : c.exponents.numeric_roots) {
                e.push_back(to_json(r, 20));
                ex += (ex.empty() ? "" : ", ") + r.str(12);
            }
            col["numeric_exponents"] = e;
        }
        col["apparent_candidate"] = c.apparent_candidate;
        cols.push_back(col);
        rep.text << "  " << std::setw(12) << c.point.label() << " : {" << ex << "}"
                 << (c.apparent_candidate ? "   (apparent candidate)" : "") << "\n";
    }
    rep.result["columns"] = cols;
    rep.result["exponent_total"] = exponent_total(sch).str();
    rep.text << "  sum of exponents over all points: " << exponent_total(sch).str() << "\n";
    if (!mum_point.empty()) {
        auto p = parse_point(mum_point);
        auto mc = mum_check(op, p);
        rep.result["mum_check"] = {{"point", p.label()}, {"class", to_string(mc)}};
        rep.text << "  MUM check at " << p.label() << ": " << to_string(mc) << "\n";
    }
}

// ---- transform --------------------------------------------------------------

void run_transform(const Input &in, const std::vector<Move> &moves, const std::string &out, Report &rep)
{
    auto op = load_operator(in, rep);
    auto t = transform(op, moves);
    Json mv = Json::array();
    for (auto &m : moves) {
        static const char *names[] = {"invert_z", "rescale", "shift", "gauge"};
        Json e = {{"move", names[m.kind]}};
        if (m.kind != Move::InvertZ)
            e["value"] = m.value.str();
        mv.push_back(e);
    }
    rep.manifest["moves"] = mv;
    rep.result["operator"] = to_json(t);
    rep.text << "transformed operator:\n  " << t.str() << "\n";
    if (!out.empty()) {
        std::ofstream(out) << to_json(t).dump(2) << "\n";
        rep.text << "  wrote " << out << "\n";
    }
}

// ---- cy-check ---------------------------------------------------------------

void run_cy(const Input &in, int terms, const std::string &rescale, Report &rep)
{
    auto op = load_operator(in, rep);
    std::optional<Rational> r;
    if (!rescale.empty()) {
        r = Rational::parse(rescale);
        rep.manifest["rescale"] = r->str();
    }
    rep.manifest["terms"] = terms;
    auto res = cy_check(op, terms, r);
    rep.result = to_json(res);
    rep.text << "Calabi-Yau conditions" << (r ? " after rescaling by " + r->str() : "") << ":\n";
    for (auto &c : res.conditions)
        rep.text << "  (" << c.index << ") " << (c.pass ? "pass" : "FAIL") << "  " << c.detail << "\n";
}

// ---- mirror -----------------------------------------------------------------

void run_mirror(const Input &in, int terms, const std::string &c2s, Report &rep)
{
    auto op = load_operator(in, rep);
    Rational c2 = c2s.empty() ? Rational(1) : Rational::parse(c2s);
    rep.manifest["terms"] = terms;
    auto mm = mirror_map(op, terms, c2);
    rep.result = {{"c2", c2.str()}, {"g", to_json(mm.g)}, {"q", to_json(mm.q)}, {"z_of_q", to_json(mm.z_of_q)}};
    rep.text << "mirror map (c2 = " << c2.str() << ")\n";
    rep.text << "  g    = " << series_text(mm.g, 6) << "\n";
    rep.text << "  q    = " << series_text(mm.q, 6) << "\n";
    rep.text << "  z(q) = " << series_text(mm.z_of_q, 6) << "\n";
}

// ---- yukawa -----------------------------------------------------------------

struct YukawaOpts {
    int terms = 50;
    bool normalize = false;
    std::string c1, c2;
    std::string relation;
};

Json compare_kappa(const QSeries &kappa, const Json &ref, std::ostream &text)
{
    Json out = Json::array();
    const Json &coeffs = ref.at("coefficients");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
        size_t k = static_cast<size_t>(std::stoul(it.key()));
        Rational want = rational_from_json(it.value(), "reference.kappa");
        if (k >= kappa.order())
            continue;
        bool ok = kappa[k] == want;
        out.push_back({{"power", k}, {"reference", want.str()}, {"derived", kappa[k].str()}, {"match", ok}});
        if (!ok)
            text << "  REFERENCE MISMATCH at q^" << k << ": reference " << want.str() << ", derived " << kappa[k].str()
                 << "\n";
    }
    return out;
}

// Reference numbers are compared up to one common factor (the free scale m).
Json compare_instantons(const std::vector<Rational> &n, const Json &ref, std::ostream &text)
{
    std::optional<Rational> ratio;
    bool ok = true;
    size_t used = 0;
    for (size_t d = 0; d < ref.size() && d < n.size(); ++d, ++used) {
        Rational want = rational_from_json(ref[d], "reference.instantons");
        if (!ratio && !n[d].is_zero())
            ratio = want / n[d];
        if (!ratio || want != *ratio * n[d]) {
            ok = false;
            text << "  REFERENCE MISMATCH at d = " << d + 1 << ": reference " << want.str() << ", derived "
                 << n[d].str() << "\n";
        }
    }
    if (ok)
        text << "  degrees 1.." << used << " agree with the reference after scaling by m = "
             << (ratio ? ratio->str() : "?") << "\n";
    return {{"degrees", used}, {"match", ok}, {"m", ratio ? ratio->str() : ""}};
}

void run_yukawa(const Input &in, const YukawaOpts &o, Report &rep)
{
    auto op = load_operator(in, rep);
    rep.manifest["terms"] = o.terms;
    auto B = yukawa_B(op, o.terms);
    rep.result["B"] = B.str();
    rep.text << "Yukawa coupling in z: " << B.str() << "\n";
    QSeries kappa;
    InstantonTable table;
    if (o.normalize) {
        auto nz = normalize_instantons(op, o.terms);
        kappa = nz.kappa;
        table = nz.table;
        rep.text << "normalization: c2 = " << nz.c2.str() << ", c1 = " << nz.c1.str() << " (in units of m)\n";
    } else {
        Rational c1 = o.c1.empty() ? Rational(1) : Rational::parse(o.c1);
        Rational c2 = o.c2.empty() ? Rational(1) : Rational::parse(o.c2);
        kappa = yukawa_A(op, c1, c2, o.terms);
        table = gw_gv(kappa);
        table.c1 = c1;
        table.c2 = c2;
    }
    rep.result["kappa"] = to_json(kappa);
    rep.result["instantons"] = to_json(table);
    rep.text << "kappa(q) = " << series_text(kappa, 8) << "\n" << table.text();
    if (auto ref = load_reference(in); ref && ref->contains("kappa")) {
        rep.text << "comparison with reference coefficients:\n";
        rep.result["reference_comparison"] = compare_kappa(kappa, ref->at("kappa"), rep.text);
    }
    if (auto ref = load_reference(in); ref && ref->contains("instantons")) {
        rep.text << "comparison with reference instanton numbers:\n";
        rep.result["reference_instantons"] = compare_instantons(table.n, ref->at("instantons").at("n"), rep.text);
    }
    if (!o.relation.empty()) {
        Input other;
        (std::filesystem::exists(o.relation) ? other.op_file : other.preset) = o.relation;
        Report tmp;
        auto op2 = load_operator(other, tmp);
        auto k2 = normalize_instantons(op2, o.terms).kappa;
        bool ab = relation_check(kappa, k2, o.terms), ba = relation_check(k2, kappa, o.terms);
        rep.result["relation"] = {{"other", o.relation}, {"two_kappa_this_q2_equals_other", ab},
                                  {"two_kappa_other_q2_equals_this", ba}};
        rep.text << "relation 2 kappa_this(q^2) = kappa_other(q): " << (ab ? "holds" : "fails") << " to order "
                 << o.terms << "\n";
        rep.text << "relation 2 kappa_other(q^2) = kappa_this(q): " << (ba ? "holds" : "fails") << " to order "
                 << o.terms << "\n";
    }
}

} // namespace

namespace {

// ---- monodromy --------------------------------------------------------------

struct MonoOpts {
    std::string around = "all";
    long precision = 0;
    std::string basepoint = "-1/10";
    std::string theta = "1/2";
    int order = 60;
    bool verify_doubling = false;
};

std::string jordan_text(const QMatrix &m)
{
    std::string s;
    for (auto &[ev, ranks] : jordan_type(m)) {
        s += (s.empty() ? "" : "; ") + std::string("eigenvalue ") + ev.str() + " ranks";
        for (auto r : ranks)
            s += " " + std::to_string(r);
    }
    return s;
}

Json jordan_json(const QMatrix &m)
{
    Json j = Json::array();
    for (auto &[ev, ranks] : jordan_type(m))
        j.push_back({{"eigenvalue", ev.str()}, {"ranks", ranks}});
    return j;
}

std::string word_text(const std::vector<int> &w, const std::vector<std::string> &names)
{
    if (w.empty())
        return "identity";
    std::string s;
    for (int x : w)
        s += (s.empty() ? "" : " ") + names[static_cast<size_t>(std::abs(x) - 1)] + (x < 0 ? "^-1" : "");
    return s;
}

void run_monodromy(const Input &in, const MonoOpts &o, Report &rep)
{
    auto op = load_operator(in, rep);
    MonodromyOptions mo;
    mo.precision = o.precision;
    mo.basepoint = Rational::parse(o.basepoint);
    mo.theta = Rational::parse(o.theta);
    mo.order = o.order;
    rep.manifest["precision"] = mo.precision;
    rep.manifest["conventions"] = {
        {"basepoint", mo.basepoint.str()},
        {"theta", mo.theta.str()},
        {"loops", "counterclockwise circles of half the distance to the nearest other singular point, reached "
                  "along the real axis passing below intervening singular points; infinity: clockwise circle of "
                  "radius 2 max|singular point| reached along the negative real axis"},
        {"basis", "MUM scaled basis changed by a polynomial in log T0 so the conifold loop differs from the "
                  "identity in its first row"},
        {"composite_order", "finite loops in decreasing order of position"}};

    const bool all = o.around == "all";
    std::vector<SingularPoint> pts;
    if (all) {
        pts = declared_loop_order(op);
        pts.push_back(SingularPoint::infinity());
    } else {
        pts.push_back(parse_point(o.around));
    }
    auto report = monodromy(op, pts, mo);
    Json loops = Json::array();
    bool any_failed = false;
    std::map<std::string, QMatrix> exact;
    for (auto &l : report.loops) {
        Json j = to_json(l);
        rep.text << "loop around " << l.point.label() << "\n    path: " << l.path << "\n";
        if (!l.reconstructed) {
            any_failed = true;
            rep.text << "    reconstruction FAILED: " << l.failure << "\n";
            if (l.numeric.rows())
                rep.text << cmatrix_text(l.numeric, 16);
        } else {
            exact[l.point.label()] = l.exact;
            Poly cp = charpoly(l.exact);
            j["charpoly"] = cp.str("x");
            j["jordan"] = jordan_json(l.exact);
            j["det"] = det(l.exact).str();
            rep.text << matrix_text(l.exact) << "    residual " << l.residual.str(4) << ", det " << det(l.exact).str()
                     << ", charpoly " << cp.str("x") << "\n    Jordan: " << jordan_text(l.exact) << "\n";
        }
        loops.push_back(j);
    }
    rep.result["loops"] = loops;
    if (report.conifold)
        rep.result["conifold_point"] = report.conifold->label();

    std::vector<QMatrix> ms;
    for (auto &[k, m] : exact)
        ms.push_back(m);
    if (!ms.empty()) {
        auto om = common_symplectic_form(ms);
        if (om) {
            rep.result["symplectic_form"] = to_json(*om);
            rep.text << "common antisymmetric form (det " << det(*om).str() << "):\n" << matrix_text(*om);
        } else {
            rep.result["symplectic_form"] = nullptr;
            rep.text << "no common antisymmetric form\n";
        }
    }

    if (all && !any_failed) {
        QMatrix prod = QMatrix::identity(4);
        std::string order;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            prod = prod * exact.at(pts[i].label());
            order += (order.empty() ? "" : " ") + pts[i].label();
        }
        bool holds = prod * exact.at("inf") == QMatrix::identity(4);
        rep.result["composite_relation"] = {{"order", order}, {"holds", holds}};
        rep.text << "composite relation T(" << order << ") T_inf = Id: " << (holds ? "holds" : "FAILS") << "\n";
    }

    if (exact.count("0") && report.conifold && exact.count(report.conifold->label())) {
        try {
            auto [h3, c2h] = hms_invariants(exact.at("0"), exact.at(report.conifold->label()));
            rep.result["hms"] = {{"H3", h3.str()}, {"c2H", c2h.str()}};
            rep.text << "HMS invariants from (T_0, T_" << report.conifold->label() << "): H^3 = " << h3.str()
                     << ", c2.H = " << c2h.str() << "\n";
        } catch (const Error &e) {
            rep.result["hms"] = {{"failure", e.what()}};
            rep.text << "HMS invariants: " << e.what() << "\n";
        }
    }

    if (auto ref = load_reference(in); ref && ref->contains("monodromy") && exact.count("0")) {
        const Json &rm = ref->at("monodromy");
        std::vector<QMatrix> gens{exact.at("0")};
        std::vector<std::string> names{"T_0"};
        if (report.conifold && exact.count(report.conifold->label())) {
            gens.push_back(exact.at(report.conifold->label()));
            names.push_back("T_" + report.conifold->label());
        }
        Json cmp = Json::array();
        rep.text << "comparison with reference matrices:\n";
        for (auto it = rm.begin(); it != rm.end(); ++it) {
            QMatrix want = matrix_from_json(it.value());
            Json c = {{"label", it.key()}};
            auto got = exact.find(it.key());
            if (got != exact.end() && got->second == want) {
                c["status"] = "entrywise";
                rep.text << "  " << it.key() << ": equal entrywise\n";
                cmp.push_back(c);
                continue;
            }
            // Same conjugacy data somewhere among the computed loops?
            bool found = false;
            for (auto &[label, m] : exact) {
                if (!(charpoly(m) == charpoly(want)) || jordan_type(m) != jordan_type(want))
                    continue;
                if (auto w = find_conjugator(m, want, gens, 2)) {
                    c["status"] = "conjugate";
                    c["computed_loop"] = label;
                    c["conjugator"] = word_text(*w, names);
                    rep.text << "  " << it.key() << ": equals G T_" << label << " G^-1 with G = "
                             << word_text(*w, names) << (label != it.key() ? "   (LABEL DIFFERS)" : "") << "\n";
                    found = true;
                    break;
                }
            }
            if (!found) {
                c["status"] = "mismatch";
                if (got != exact.end())
                    c["charpoly_match"] = charpoly(got->second) == charpoly(want);
                rep.text << "  " << it.key() << ": NO MATCH within words of length 2\n";
            }
            cmp.push_back(c);
        }
        rep.result["reference_comparison"] = cmp;
    }

    if (o.verify_doubling && !any_failed) {
        MonodromyOptions m2 = mo;
        m2.precision = 2 * mo.precision;
        auto again = monodromy(op, pts, m2);
        bool same = true;
        for (size_t i = 0; i < pts.size(); ++i)
            same = same && again.loops[i].reconstructed && again.loops[i].exact == report.loops[i].exact;
        rep.result["precision_doubling_stable"] = same;
        rep.text << "doubling precision to " << m2.precision << " bits: " << (same ? "unchanged" : "CHANGED") << "\n";
    }
    if (any_failed)
        reconstruction_error("reconstruction-failed", "some loops did not reconstruct; see report");
}

// ---- conifold ---------------------------------------------------------------

struct ConOpts {
    std::vector<std::string> fix_h3, fix_c3;
    long precision = 0;
    std::string c2;
    int terms = 30;
    bool reflection = false;
};

void run_conifold(const Input &in, const ConOpts &o, Report &rep)
{
    auto op = load_operator(in, rep);
    rep.manifest["precision"] = o.precision;
    rep.manifest["terms"] = o.terms;
    auto f = conifold_period(op, o.terms);
    std::optional<Rational> c2;
    if (!o.c2.empty())
        c2 = Rational::parse(o.c2);
    auto m = continue_to_mum(op, f, o.precision, c2);
    rep.result["conifold_period"] = to_json(f);
    rep.result["match"] = to_json(m);
    rep.text << "conifold point " << f.point.label() << ", period " << series_text(f.S[0], 5) << "\n";
    rep.text << "continued along " << m.start.str(10) << " -> " << m.end.str(10) << " at " << o.precision
             << " bits\n";
    for (size_t k = 0; k < m.beta.size(); ++k)
        rep.text << "  beta_" << k << " = " << m.beta[k].str(25) << "\n";
    rep.text << "  mirror coordinate shift (c2 = " << m.c2.str() << "): " << m.shift.str(20) << "\n";

    std::vector<ScaleMode> modes;
    for (auto &v : o.fix_h3)
        modes.push_back({ScaleMode::FixH3, Rational::parse(v)});
    for (auto &v : o.fix_c3)
        modes.push_back({ScaleMode::FixC3, Rational::parse(v)});
    if (modes.empty())
        input_error("bad-arguments", "give --fix-h3 V or --fix-c3 V");
    Json ex = Json::array();
    bool failed = false;
    for (auto &md : modes) {
        auto e = extract_invariants(m, md);
        ex.push_back(to_json(e));
        if (!e.failure.empty()) {
            failed = true;
            rep.text << md.str() << ": FAILED " << e.failure << "\n";
            continue;
        }
        rep.text << md.str() << ": H^3 = " << e.h3.str() << ", c2.H = " << e.c2h.str() << ", c3 = " << e.c3.str()
                 << "   (t^2 coefficient " << e.s2.str(6) << ", residual " << e.residual.str(4) << ")\n";
    }
    rep.result["extractions"] = ex;
    if (o.reflection) {
        MonodromyOptions mo;
        mo.precision = o.precision;
        auto r = loop_monodromy(op, f.point, mo);
        Real d = reflection_defect(m.beta, r.scaled);
        rep.result["reflection_defect"] = d.str(6);
        rep.text << "rows of (T_" << f.point.label() << " - I) against beta: relative defect " << d.str(4) << "\n";
    }
    if (failed)
        reconstruction_error("reconstruction-failed", "an extraction did not reconstruct; see report");
}

// ---- appendix-check ---------------------------------------------------------

struct AppOpts {
    std::string h3, c2h, c3;
    std::string gw;
    int terms = 12;
};

void run_appendix(const Input &in, const AppOpts &o, Report &rep)
{
    if (o.h3.empty() || o.c2h.empty() || o.c3.empty())
        input_error("bad-arguments", "--h3, --c2h and --c3 are required");
    Rational h3 = Rational::parse(o.h3), c2h = Rational::parse(o.c2h), c3 = Rational::parse(o.c3);
    std::vector<Rational> Nd;
    if (!o.gw.empty()) {
        rep.manifest["input"] = o.gw;
        Nd = gw_table_from_json(read_json_file(o.gw));
    } else {
        auto op = load_operator(in, rep);
        auto table = normalize_instantons(op, std::max(o.terms + 2, 12)).table;
        // m chosen so that the constant term of kappa is H^3
        Rational m = h3 / table.h3;
        for (auto &x : table.N)
            Nd.push_back(x * m);
        rep.manifest["scale_m"] = m.str();
    }
    rep.manifest["terms"] = o.terms;
    auto r = central_charge_check(h3, c2h, c3, Nd, o.terms);
    rep.result = {{"H3", h3.str()},
                  {"c2H", c2h.str()},
                  {"c3", c3.str()},
                  {"polynomial_part_zero", r.polynomial_part_zero},
                  {"leading_q", r.leading_q},
                  {"leading", to_string(r.leading)}};
    rep.text << "central charge check with (H^3, c2.H, c3) = (" << h3.str() << ", " << c2h.str() << ", " << c3.str()
             << ")\n";
    rep.text << "  polynomial part of the residual: " << (r.polynomial_part_zero ? "identically zero" : "NONZERO")
             << "\n";
    if (r.leading_q > 0)
        rep.text << "  leading instanton residual at q^" << r.leading_q << ": " << to_string(r.leading) << "\n";
}

int exit_code(const Error &e)
{
    switch (e.kind()) {
    case ErrorKind::Input:
        return 2;
    case ErrorKind::Computation:
        return 3;
    case ErrorKind::Reconstruction:
        return 4;
    }
    return 3;
}

void add_input(CLI::App *sub, Input &in)
{
    sub->add_option("--preset", in.preset, "dn-31-1-D, dn-31-1-Dtilde or quintic");
    sub->add_option("--op", in.op_file, "operator JSON file");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Picard-Fuchs toolkit: periods, operators, mirror maps, instantons, monodromy"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    bool json = false;
    std::string out_report;
    app.add_flag("--json", json, "machine-readable JSON output");
    app.add_option("--report", out_report, "also write the JSON report to this file");

    Input in;
    PeriodsOpts po;
    auto *periods = app.add_subcommand("periods", "constant-term period series");
    periods->add_option("--preset", po.preset, "CT problem preset");
    periods->add_option("--problem", po.problem, "CT problem JSON file");
    periods->add_option("--terms", po.terms, "truncation order in a");
    periods->add_option("--engine", po.engine, "auto, exact or modular");
    periods->add_option("--out", po.out, "write the z-series JSON here");

    FitOpts fo;
    auto *fit = app.add_subcommand("fit-ode", "annihilating operator of a series");
    fit->add_option("--series", fo.series, "series JSON file")->required();
    fit->add_option("--order", fo.order);
    fit->add_option("--degree", fo.degree);
    fit->add_flag("--even", fo.even, "reduce an even series in a to z = a^2 first");
    fit->add_option("--out", fo.out, "write the operator JSON here");

    std::string mum_point;
    auto *scheme = app.add_subcommand("scheme", "Riemann scheme");
    add_input(scheme, in);
    scheme->add_option("--mum-check", mum_point, "classify this point");

    std::string tr_out;
    auto *trans = app.add_subcommand("transform", "coordinate and gauge moves, applied in the given order");
    add_input(trans, in);
    trans->add_flag("--invert-z", "z -> 1/z")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    trans->add_option("--rescale", "new coordinate l z")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    trans->add_option("--shift", "new coordinate z + c")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    trans->add_option("--gauge", "z^-g L z^g")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    trans->add_option("--out", tr_out, "write the operator JSON here");

    int cy_terms = 50;
    std::string cy_rescale;
    auto *cy = app.add_subcommand("cy-check", "Calabi-Yau operator conditions (1)-(5)");
    add_input(cy, in);
    cy->add_option("--terms", cy_terms);
    cy->add_option("--rescale", cy_rescale, "rescale the coordinate first");

    int mir_terms = 50;
    std::string mir_c2;
    auto *mir = app.add_subcommand("mirror", "mirror map");
    add_input(mir, in);
    mir->add_option("--terms", mir_terms);
    mir->add_option("--c2", mir_c2, "q = c2 z exp(g)");

    YukawaOpts yo;
    auto *yuk = app.add_subcommand("yukawa", "Yukawa coupling and instanton numbers");
    add_input(yuk, in);
    yuk->add_option("--terms", yo.terms);
    yuk->add_flag("--normalize", yo.normalize, "choose c1, c2 making the instanton numbers integral");
    yuk->add_option("--c1", yo.c1);
    yuk->add_option("--c2", yo.c2);
    yuk->add_option("--relation", yo.relation, "other operator (preset or file) for the doubling identity");
    yuk->add_option("--reference", in.reference, "reference values JSON");

    MonoOpts mo;
    auto *mono = app.add_subcommand("monodromy", "numerical monodromy with exact reconstruction");
    add_input(mono, in);
    mono->add_option("--around", mo.around, "POINT, inf or all");
    mono->add_option("--precision", mo.precision, "bits (default 512 or CYP_PRECISION_BITS)");
    mono->add_option("--basepoint", mo.basepoint);
    mono->add_option("--theta", mo.theta, "step fraction of the distance to the nearest singularity");
    mono->add_option("--order", mo.order, "minimum Taylor order per step");
    mono->add_flag("--verify-doubling", mo.verify_doubling, "repeat at twice the precision and compare");
    mono->add_option("--reference", in.reference, "reference matrices JSON");

    ConOpts co;
    auto *con = app.add_subcommand("conifold", "conifold period and invariants");
    add_input(con, in);
    con->add_option("--fix-h3", co.fix_h3, "scale so that H^3 = V");
    con->add_option("--fix-c3", co.fix_c3, "scale so that c3 = V");
    con->add_option("--precision", co.precision);
    con->add_option("--c2", co.c2, "mirror map constant (default: instanton normalization)");
    con->add_option("--terms", co.terms, "Frobenius terms at the conifold point");
    con->add_flag("--reflection", co.reflection, "compare beta with the conifold loop");

    AppOpts ao;
    auto *appx = app.add_subcommand("appendix-check", "central charge identity");
    add_input(appx, in);
    appx->add_option("--h3", ao.h3);
    appx->add_option("--c2h", ao.c2h);
    appx->add_option("--c3", ao.c3);
    appx->add_option("--gw", ao.gw, "GW table JSON {\"N\": [...]}");
    appx->add_option("--terms", ao.terms, "q-order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report rep;
    auto t0 = std::chrono::steady_clock::now();
    try {
        CLI::App *sub = app.get_subcommands().front();
        rep.manifest["command"] = sub->get_name();
        rep.manifest["version"] = kVersion;
        if (mo.precision == 0)
            mo.precision = default_precision();
        if (co.precision == 0)
            co.precision = default_precision();
        if (sub == periods) {
            run_periods(po, rep);
        } else if (sub == fit) {
            run_fit(fo, rep);
        } else if (sub == scheme) {
            run_scheme(in, mum_point, rep);
        } else if (sub == trans) {
            std::vector<Move> moves;
            std::map<std::string, size_t> seen;
            for (CLI::Option *opt : trans->parse_order()) {
                std::string n = opt->get_name();
                size_t k = seen[n]++;
                if (n == "--invert-z") {
                    moves.push_back(Move::invert());
                    continue;
                }
                if (n == "--out")
                    continue;
                if (n != "--rescale" && n != "--shift" && n != "--gauge")
                    continue;
                Rational v = Rational::parse(opt->results().at(k));
                moves.push_back(n == "--rescale" ? Move::rescale(v) : n == "--shift" ? Move::shift(v) : Move::gauge(v));
            }
            run_transform(in, moves, tr_out, rep);
        } else if (sub == cy) {
            run_cy(in, cy_terms, cy_rescale, rep);
        } else if (sub == mir) {
            run_mirror(in, mir_terms, mir_c2, rep);
        } else if (sub == yuk) {
            run_yukawa(in, yo, rep);
        } else if (sub == mono) {
            run_monodromy(in, mo, rep);
        } else if (sub == con) {
            run_conifold(in, co, rep);
        } else if (sub == appx) {
            run_appendix(in, ao, rep);
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        if (json)
            std::cout << Json{{"manifest", rep.manifest}, {"error", {{"code", e.code()}, {"message", e.what()}}},
                              {"partial", rep.result}}
                             .dump(2)
                      << "\n";
        else
            std::cout << rep.text.str();
        return exit_code(e);
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: malformed-input: " << e.what() << "\n";
        return 2;
    }

    Json full = {{"manifest", rep.manifest}, {"result", rep.result}};
    if (!out_report.empty())
        std::ofstream(out_report) << full.dump(2) << "\n";
    if (json) {
        std::cout << full.dump(2) << "\n";
    } else {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "# " << rep.manifest["command"].get<std::string>() << " " << kVersion;
        for (auto it = rep.manifest.begin(); it != rep.manifest.end(); ++it)
            if (it.key() != "command" && it.key() != "version" && it.key() != "conventions")
                std::cout << "  " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
        std::cout << "  wall=" << std::fixed << std::setprecision(2) << secs << "s\n" << std::defaultfloat;
        std::cout << rep.text.str();
    }
    return 0;
}
