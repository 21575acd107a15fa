// One PASS/FAIL line per acceptance criterion. The command-line tool is taken
// from $CYP_CLI (ctest sets it), the unit-test binary from $CYP_UNIT_TESTS.

#include "cyp/conifold/conifold.hpp"
#include "cyp/io/json_io.hpp"
#include "cyp/mirror/mirror.hpp"
#include "cyp/monodromy/monodromy.hpp"
#include "cyp/ode/cy_check.hpp"
#include "cyp/period/period.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <sys/wait.h>

using namespace cyp;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string &s) { notes.push_back(s); }
};

Rational R(long n, long d = 1)
{
    return Rational(Integer(n), Integer(d));
}

std::string env_or(const char *name, const std::string &fallback)
{
    const char *v = std::getenv(name);
    return v && *v ? v : fallback;
}

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string &cmd)
{
    Run r;
    FILE *p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Run cli(const std::string &args)
{
    return run(env_or("CYP_CLI", "./cyp") + " " + args);
}

Json cli_json(const std::string &args, Outcome &o, int expect_status = 0)
{
    Run r = cli("--json " + args);
    o.require(r.status == expect_status,
              "cyp " + args + " exited " + std::to_string(r.status) + ", expected " + std::to_string(expect_status));
    try {
        return Json::parse(r.out);
    } catch (const std::exception &e) {
        o.require(false, "cyp " + args + " printed no JSON");
        return Json::object();
    }
}

std::vector<Rational> rational_list_from(const Json &j)
{
    std::vector<Rational> out;
    for (auto &x : j)
        out.push_back(rational_from_json(x, "reference"));
    return out;
}

std::string data_path(const std::string &rel)
{
    return std::string(CYP_DATA_DIR) + "/" + rel;
}

std::string temp_path(const std::string &name)
{
    return "cyp_acceptance_" + name;
}

// ---------------------------------------------------------------------------

Outcome period_series()
{
    Outcome o;
    Json j = cli_json("periods --preset dn-31-1 --terms 40", o);
    if (!o.pass)
        return o;
    QSeries a = series_from_json(j.at("result").at("a_series"));
    o.require(a.order() == 40, "40 coefficients");
    const Rational &c0 = a[0];
    o.require(a[2] / c0 == R(3, 4), "a^2 ratio 3/4");
    o.require(a[4] / c0 == R(81, 128), "a^4 ratio 81/128");
    o.require(a[6] / c0 == R(143, 256), "a^6 ratio 143/256");
    o.require(a[8] / c0 == R(66357, 131072), "a^8 ratio 66357/131072");
    bool odd = true;
    for (size_t k = 1; k < a.order(); k += 2)
        odd = odd && a[k].is_zero();
    o.require(odd, "odd coefficients zero through a^39");
    o.note("engine " + j.at("result").at("engine").get<std::string>());
    return o;
}

Outcome operator_recovery()
{
    Outcome o;
    // at a-order 40 there are 20 z-coefficients, fewer than the fit needs
    std::string s40 = temp_path("series40.json"), s86 = temp_path("series86.json");
    cli_json("periods --preset dn-31-1 --terms 40 --out " + s40, o);
    Json short_fit = cli_json("fit-ode --series " + s40, o, 2);
    if (short_fit.contains("error"))
        o.note("N = 40: " + short_fit.at("error").at("message").get<std::string>());
    Outcome main;
    cli_json("periods --preset dn-31-1 --terms 86 --out " + s86, main);
    Json fit = cli_json("fit-ode --series " + s86, main);
    if (main.pass) {
        auto op = operator_from_json(fit.at("result").at("operator"));
        main.require(op == preset_operator("dn-31-1-D"), "fitted operator equals D");
        main.note("N = 86 (43 z-coefficients): recovered D in normal form");
    }
    std::remove(s40.c_str());
    std::remove(s86.c_str());
    main.notes.insert(main.notes.begin(), o.notes.begin(), o.notes.end());
    main.pass = main.pass && o.pass;
    return main;
}

Outcome riemann()
{
    Outcome o;
    auto s = riemann_scheme(preset_operator("dn-31-1-D"));
    std::map<std::string, std::vector<Rational>> want{{"-8", {0, 1, 1, 2}},
                                                      {"0", {0, 0, 0, 0}},
                                                      {"1", {R(-1, 2), 0, 0, R(1, 2)}},
                                                      {"inf", {R(3, 2), R(3, 2), R(3, 2), R(3, 2)}}};
    for (auto &[label, roots] : want) {
        bool found = false;
        for (auto &c : s)
            if (c.point.label() == label) {
                found = true;
                o.require(c.exponents.exact && c.exponents.roots == roots, "exponents at " + label);
            }
        o.require(found, "column " + label);
    }
    return o;
}

Outcome transform_check()
{
    Outcome o;
    auto dt = preset_operator("dn-31-1-Dtilde");
    o.require(transform(preset_operator("dn-31-1-D"), {Move::invert(), Move::gauge(R(3, 2))}) == dt, "library");
    Json j = cli_json("transform --preset dn-31-1-D --invert-z --gauge 3/2", o);
    if (o.pass)
        o.require(operator_from_json(j.at("result").at("operator")) == dt, "command line");
    return o;
}

Outcome cy_conditions()
{
    Outcome o;
    auto d = preset_operator("dn-31-1-D");
    auto a = cy_check(d, 50, R(1, 32));
    auto b = cy_check(preset_operator("dn-31-1-Dtilde"), 50, R(-1, 16));
    auto c = cy_check(d, 50);
    o.require(a.all_pass(), "D rescaled by 1/32 passes (1)-(5)");
    o.require(b.all_pass(), "Dtilde rescaled by -1/16 passes (1)-(5)");
    o.require(c.failed() == std::vector<int>{4}, "unscaled D fails exactly (4)");
    return o;
}

Outcome mirror_coefficients()
{
    Outcome o;
    auto g = mirror_map(preset_operator("dn-31-1-D"), 8).g;
    o.require(g[1] == R(3, 8) && g[2] == R(81, 512) && g[3] == R(187, 2048) && g[4] == R(64797, 1048576),
              "g coefficients");
    return o;
}

Outcome couplings()
{
    Outcome o;
    const int N = 50;
    auto inf = normalize_instantons(preset_operator("dn-31-1-Dtilde"), N);
    auto zero = normalize_instantons(preset_operator("dn-31-1-D"), N);
    const Rational m = inf.m;
    std::vector<long> k_inf{1, 36, -1116, 218088, -3712860};
    for (size_t k = 0; k < k_inf.size(); ++k)
        o.require(inf.kappa[k] == m * Rational(k_inf[k]), "kappa^inf q^" + std::to_string(k));
    std::vector<long> n_inf{36, -144, 8076, -57996};
    for (size_t d = 0; d < n_inf.size(); ++d)
        o.require(inf.table.n[d] == m * Rational(n_inf[d]), "n^inf_" + std::to_string(d + 1));
    const Rational m0 = zero.m;
    o.require(zero.table.n[1] == m0 * 9 && zero.table.n[3] == m0 * -36 && zero.table.n[5] == m0 * 2019,
              "kappa^0 GV numbers (n2, n4, n6)");
    o.require(relation_check(inf.kappa, zero.kappa, N), "2 kappa^inf(q^2) = kappa^0(q) to order 50");
    // the report must flag the printed q^2 and q^6 coefficients
    Run r = cli("yukawa --preset dn-31-1-D --normalize");
    o.require(r.status == 0, "yukawa report ran");
    o.require(r.out.find("REFERENCE MISMATCH at q^2: reference 27, derived 72") != std::string::npos,
              "flag at q^2");
    o.require(r.out.find("REFERENCE MISMATCH at q^6: reference 43617, derived 436176") != std::string::npos,
              "flag at q^6");
    o.require(r.out.find("REFERENCE MISMATCH at q^4") == std::string::npos &&
                  r.out.find("REFERENCE MISMATCH at q^8") == std::string::npos,
              "q^4 and q^8 agree with the printed values");
    if (o.pass)
        o.note("printed 27 and 43617 flagged against derived 72 and 436176");
    return o;
}

std::map<std::string, QMatrix> printed(const std::string &preset)
{
    Json ref = read_json_file(data_path("reference/" + preset + ".json"));
    std::map<std::string, QMatrix> out;
    for (auto it = ref.at("monodromy").begin(); it != ref.at("monodromy").end(); ++it)
        out[it.key()] = matrix_from_json(it.value());
    return out;
}

// Shared between the monodromy and HMS criteria.
std::map<std::string, QMatrix> g_d_loops;

Outcome monodromy_check()
{
    Outcome o;
    Json j = cli_json("monodromy --preset dn-31-1-D --precision 512 --verify-doubling", o);
    if (!o.pass)
        return o;
    const Json &res = j.at("result");
    PrecisionScope ps(600);
    const Real bound = ldexp(Real(1), -128);
    Real worst(0);
    for (auto &l : res.at("loops")) {
        std::string label = l.at("point").get<std::string>();
        if (!l.contains("exact")) {
            o.require(false, "loop " + label + " reconstructed");
            continue;
        }
        g_d_loops[label] = matrix_from_json(l.at("exact"));
        Real r = Real::from_string(l.at("residual").get<std::string>());
        worst = max(worst, r);
        o.require(r < bound, "residual of " + label + " below 2^-128");
    }
    auto want = printed("dn-31-1-D");
    for (auto label : {"0", "-8", "4"})
        o.require(g_d_loops.count(label) && g_d_loops.at(label) == want.at(label), std::string("T_") + label + " exact");
    for (auto label : {"1", "inf"}) {
        if (!g_d_loops.count(label)) {
            o.require(false, std::string("T_") + label + " computed");
            continue;
        }
        const QMatrix &m = g_d_loops.at(label), &w = want.at(label);
        o.require(charpoly(m) == charpoly(w), std::string("charpoly of T_") + label);
        o.require(jordan_type(m) == jordan_type(w), std::string("Jordan type of T_") + label);
        bool entrywise = m == w;
        bool conj = false;
        for (auto &c : res.at("reference_comparison"))
            if (c.at("label") == label && c.at("status") != "mismatch")
                conj = true;
        o.require(entrywise || conj, std::string("T_") + label + " entrywise or conjugate");
        o.note(std::string("T_") + label + (entrywise ? " entrywise" : " by conjugation"));
    }
    std::vector<QMatrix> all;
    for (auto &[k, m] : g_d_loops)
        all.push_back(m);
    auto om = common_symplectic_form(all);
    o.require(om && !det(*om).is_zero(), "common nondegenerate symplectic form");
    o.require(res.at("composite_relation").at("holds").get<bool>(), "composite relation");
    o.require(res.at("precision_doubling_stable").get<bool>(), "stable under doubling to 1024 bits");
    o.note("max residual " + worst.str(3));
    return o;
}

Outcome hms()
{
    Outcome o;
    if (g_d_loops.count("0") && g_d_loops.count("-8"))
        o.require(hms_invariants(g_d_loops.at("0"), g_d_loops.at("-8")) == std::pair<Rational, Rational>(192, 96),
                  "D gives (192, 96)");
    else
        o.require(false, "D loops available");
    MonodromyOptions opt;
    opt.precision = 512;
    auto dt = preset_operator("dn-31-1-Dtilde");
    auto c = conifold_point(dt);
    auto rep = monodromy(dt, {SingularPoint::at(0), *c}, opt);
    o.require(rep.loops.size() == 2 && rep.loops[0].reconstructed && rep.loops[1].reconstructed,
              "Dtilde loops reconstructed");
    if (o.pass)
        o.require(hms_invariants(rep.loops[0].exact, rep.loops[1].exact) == std::pair<Rational, Rational>(24, 48),
                  "Dtilde gives (24, 48)");
    return o;
}

Outcome conifold_check()
{
    Outcome o;
    const Real tol = [] {
        PrecisionScope ps(600);
        return ldexp(Real(1), -128);
    }();
    auto d = preset_operator("dn-31-1-D");
    auto md = continue_to_mum(d, conifold_period(d, 30), 512);
    auto a = extract_invariants(md, {ScaleMode::FixH3, 192}, tol);
    auto b = extract_invariants(md, {ScaleMode::FixC3, -60}, tol);
    auto dt = preset_operator("dn-31-1-Dtilde");
    auto mt = continue_to_mum(dt, conifold_period(dt, 30), 512);
    auto c = extract_invariants(mt, {ScaleMode::FixH3, 24}, tol);
    o.require(a.failure.empty() && a.c2h == 96 && a.c3 == 48, "D fix_H3=192 gives (96, 48)");
    o.require(b.failure.empty() && b.h3 == -240 && b.c2h == -120, "D fix_c3=-60 gives (-240, -120)");
    o.require(c.failure.empty() && c.c2h == 48 && c.c3 == 48, "Dtilde fix_H3=24 gives (48, 48)");
    PrecisionScope ps(600);
    o.note("t^2 diagnostic |s2| = " + abs(a.s2).str(3) + " (D), " + abs(c.s2).str(3) + " (Dtilde)");
    return o;
}

Outcome appendix()
{
    Outcome o;
    auto nz = normalize_instantons(preset_operator("dn-31-1-D"), 20);
    // scale m so that H^3 = 192
    Rational s = Rational(192) / nz.table.h3;
    std::vector<Rational> Nd;
    for (auto &x : nz.table.N)
        Nd.push_back(x * s);
    auto cc = central_charge_check(192, 96, 48, Nd, 20);
    o.require(cc.polynomial_part_zero, "t-polynomial part of the residual vanishes");
    o.note("leading residual at q^" + std::to_string(cc.leading_q) + ": " + to_string(cc.leading));
    return o;
}

Outcome quintic_oracle()
{
    Outcome o;
    const size_t n = 30;
    QSeries f("z", n);
    for (size_t k = 0; k < n; ++k) {
        long kk = static_cast<long>(k);
        Integer w = factorial(5 * kk);
        for (int i = 0; i < 5; ++i)
            w /= factorial(kk);
        f[k] = Rational(w);
    }
    auto op = fit_operator(f, 4, 1);
    auto nz = normalize_instantons(op, 12);
    Json ref = read_json_file(data_path("reference/quintic.json"));
    auto lit = rational_list_from(ref.at("instantons").at("n"));
    std::optional<Rational> scale;
    for (size_t d = 0; d < 10; ++d) {
        const Rational &got = nz.table.n.at(d);
        o.require(got.is_integer(), "n_" + std::to_string(d + 1) + " integral");
        if (!scale)
            scale = lit.at(d) / got;
        o.require(lit.at(d) == *scale * got, "n_" + std::to_string(d + 1) + " matches the literature");
    }
    o.note("common factor to the literature normalization: " + scale->str());
    return o;
}

Outcome property_suites()
{
    Outcome o;
    Run r = run(env_or("CYP_UNIT_TESTS", "./cyp_unit_tests") + " --test-case='*1000 random cases*'");
    o.require(r.status == 0, "property suites exit cleanly");
    auto pos = r.out.find("test cases:");
    std::string line = pos == std::string::npos ? "" : r.out.substr(pos, r.out.find('\n', pos) - pos);
    o.require(line.find("5 passed") != std::string::npos && line.find("| 0 failed") != std::string::npos,
              "five suites, zero failures");
    o.note(line);
    return o;
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"period series", period_series},
        {"operator recovery", operator_recovery},
        {"Riemann scheme", riemann},
        {"transform to infinity", transform_check},
        {"CY conditions", cy_conditions},
        {"mirror map", mirror_coefficients},
        {"couplings and instantons", couplings},
        {"monodromy", monodromy_check},
        {"HMS invariants", hms},
        {"conifold extraction", conifold_check},
        {"appendix identity", appendix},
        {"independent quintic oracle", quintic_oracle},
        {"property suites", property_suites},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::ostringstream line;
        line << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
             << static_cast<int>(secs + 0.5) << " s)";
        std::cout << line.str() << "\n";
        for (auto &n : o.notes)
            std::cout << "    " << n << "\n";
        std::cout.flush();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
