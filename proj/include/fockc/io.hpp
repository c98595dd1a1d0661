#pragma once

// JSON formats and builtin symbol expressions.
//
//   series      {"n": 2, "degree": 4, "terms": [{"word": [1, 2], "re": 0.5, "im": 0.0}, ...]}
//   symbol      {"n": 2, "degree": 4, "components": [series, ...]}
//   automorphism {"lambda": [{"re":..,"im":..}, ...], "unitary": [[{"re":..,"im":..}, ...], ...]}
//
// Words are 1-based letter arrays. Builtin expressions have the form
// name(a, b, ...; c, d, ...; key=value) with complex literals such as 0.5,
// -0.2i or 0.3+0.1i:
//   moebius(l1, ..., ln[; n=N])        Phi_lambda (missing coordinates are 0)
//   unitary(u11, u12, ..., unn)        X -> [X] U, row-major
//   linear(m11, ..., mnn)              X -> [X] M for a contraction M
//   scale(c; n=N)                      X -> c X
//   swap                               (X_2, X_1)
//   lft1(a, b, c, d)                   n = 1 map z -> (a z + b)/(c z + d)
//   affine(b1, ..., bn; m11, ..., mnn) X -> b + [X] M
//   automorphism(l1, ..., ln; u11, ..., unn)   Phi_lambda o Phi_U

#include <string>
#include <vector>

#include <json.hpp>

#include "fockc/fock.hpp"
#include "fockc/moebius.hpp"
#include "fockc/series.hpp"

namespace fockc {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json point_to_json(const Point& p);
Json matrix_to_json(const CMatrix& m);

Json series_to_json(const NcSeries& f);
Json symbol_to_json(const SymbolTuple& phi);
Json fock_vector_to_json(const FockVector& v);

NcSeries series_from_json(const Json& j);
SymbolTuple symbol_from_json(const Json& j);
AutomorphismSpec automorphism_from_json(const Json& j);

// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json_text(const std::string& text);

// A builtin expression, or a path to a symbol JSON file. The symbol is
// materialized at `degree` (polynomial files may be extended to it).
SymbolTuple resolve_symbol(const std::string& spec, std::size_t degree);
AutomorphismSpec resolve_automorphism(const std::string& spec);

bool is_builtin_expression(const std::string& spec);

// Complex literal such as "0.5", "-0.2i", "0.3+0.1i", "i".
Complex parse_complex_literal(const std::string& text);

}  // namespace fockc
