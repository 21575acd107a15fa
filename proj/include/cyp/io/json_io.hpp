#pragma once

#include "cyp/conifold/conifold.hpp"
#include "cyp/frobenius/frobenius.hpp"
#include "cyp/mirror/mirror.hpp"
#include "cyp/monodromy/monodromy.hpp"
#include "cyp/ode/cy_check.hpp"
#include "cyp/period/period.hpp"

#include <json.hpp>

#include <string>

namespace cyp {

using Json = nlohmann::ordered_json;

Json to_json(const Rational &r);
Rational rational_from_json(const Json &j, const std::string &where);

// {"variable": "z", "order": N, "coeffs": ["p/q", ...]}
Json to_json(const QSeries &s);
QSeries series_from_json(const Json &j);

// {"variable": "z", "euler": true, "coeffs": [[c00, c01, ...], ...]}
Json to_json(const DifferentialOperator &op);
DifferentialOperator operator_from_json(const Json &j);

// {"order": N, "radii": [...], "a_bound": "...", "monomials": [{"y": [..], "a": k, "c": "p/q"}]}
Json to_json(const CTProblem &p);
CTProblem problem_from_json(const Json &j);

Json to_json(const QMatrix &m);
QMatrix matrix_from_json(const Json &j);
Json to_json(const Complex &z, int digits = 40);
Json to_json(const CMatrix &m, int digits = 40);

Json to_json(const LocalSolution &s);
Json to_json(const InstantonTable &t);
// GW table file: {"N": ["p/q", ...]} with N[0] = N_1.
std::vector<Rational> gw_table_from_json(const Json &j);
Json to_json(const MonodromyResult &r);
Json to_json(const ConifoldMatch &m);
Json to_json(const CyReport &r);

// Reads and parses a file; malformed input raises an input error naming the file and position.
Json read_json_file(const std::string &path);

} // namespace cyp
