#include "fockc/io.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fockc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t require_size(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

struct Builtin {
  std::string name;
  std::vector<std::vector<Complex>> groups;
  std::map<std::string, std::string> options;
};

Builtin parse_builtin(const std::string& spec) {
  Builtin b;
  const std::string s = trim(spec);
  const auto open = s.find('(');
  if (open == std::string::npos) {
    b.name = s;
    return b;
  }
  if (s.back() != ')') throw ParseError("builtin expression must end with ')'", 1, s.size());
  b.name = trim(s.substr(0, open));
  const std::string body = s.substr(open + 1, s.size() - open - 2);
  for (const std::string& group : split(body, ';')) {
    const std::string g = trim(group);
    if (g.empty()) continue;
    if (g.find('=') != std::string::npos) {
      for (const std::string& kv : split(g, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value in \"" + g + "\"");
        b.options[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
      }
      continue;
    }
    std::vector<Complex> vals;
    for (const std::string& item : split(g, ',')) vals.push_back(parse_complex_literal(item));
    b.groups.push_back(std::move(vals));
  }
  return b;
}

std::size_t option_n(const Builtin& b, std::size_t fallback) {
  auto it = b.options.find("n");
  if (it == b.options.end()) return fallback;
  try {
    const long v = std::stol(it->second);
    if (v < 1) throw ParseError("n must be positive");
    return static_cast<std::size_t>(v);
  } catch (const std::invalid_argument&) {
    throw ParseError("n must be an integer");
  }
}

CMatrix square_from(const std::vector<Complex>& vals, const std::string& what) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(vals.size()))));
  if (n * n != vals.size() || n == 0) throw ParseError(what + " needs n*n entries");
  CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vals[i * n + j];
  }
  return m;
}

std::size_t group_count(const Builtin& b, std::size_t want) {
  if (b.groups.size() != want) {
    throw ParseError(b.name + " expects " + std::to_string(want) + " argument group(s)");
  }
  return want;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Complex parse_complex_literal(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ParseError("empty number");
  // Split at a sign that is not the leading one and not part of an exponent.
  std::size_t cut = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') cut = i;
  }
  auto part = [&](std::string p) -> Complex {
    bool imag = false;
    if (!p.empty() && (p.back() == 'i' || p.back() == 'j')) {
      imag = true;
      p.pop_back();
      if (p.empty() || p == "+") p = "1";
      if (p == "-") p = "-1";
    }
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      throw ParseError("bad number \"" + text + "\"");
    }
    if (used != p.size()) throw ParseError("bad number \"" + text + "\"");
    return imag ? Complex(0.0, v) : Complex(v, 0.0);
  };
  if (cut == std::string::npos) return part(s);
  return part(s.substr(0, cut)) + part(s.substr(cut));
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) throw ParseError("expected a complex number {\"re\": .., \"im\": ..}");
  const double re = j.contains("re") ? j.at("re").get<double>() : 0.0;
  const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
  return {re, im};
}

Json point_to_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(complex_to_json(p[i]));
  return a;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json series_to_json(const NcSeries& f) {
  Json terms = Json::array();
  const auto& e = f.enumeration();
  for (const Term& t : f.terms()) {
    terms.push_back(Json{{"word", e.word(t.index).to_external()}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  return Json{{"n", f.n()}, {"degree", f.degree()}, {"terms", terms}};
}

Json symbol_to_json(const SymbolTuple& phi) {
  Json comps = Json::array();
  for (const auto& c : phi.components()) comps.push_back(series_to_json(c));
  return Json{{"n", phi.n()}, {"degree", phi.degree()}, {"components", comps}};
}

Json fock_vector_to_json(const FockVector& v) { return series_to_json(v.to_series()); }

NcSeries series_from_json(const Json& j) {
  const std::size_t n = require_size(j, "n");
  const std::size_t degree = require_size(j, "degree");
  if (n == 0) throw ParseError("n must be at least 1");
  std::vector<std::pair<Word, Complex>> terms;
  const Json& arr = require(j, "terms");
  if (!arr.is_array()) throw ParseError("\"terms\" must be an array");
  for (const Json& t : arr) {
    const Json& w = require(t, "word");
    if (!w.is_array()) throw ParseError("\"word\" must be an array of letters");
    std::vector<int> letters;
    for (const Json& l : w) {
      if (!l.is_number_integer()) throw ParseError("letters must be integers");
      const int v = l.get<int>();
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw ParseError("letter " + std::to_string(v) + " outside 1.." + std::to_string(n));
      }
      letters.push_back(v);
    }
    if (letters.size() > degree) throw ParseError("word longer than the series degree");
    terms.emplace_back(Word::from_external(letters, n), complex_from_json(t));
  }
  return NcSeries::from_terms(n, degree, terms);
}

SymbolTuple symbol_from_json(const Json& j) {
  const std::size_t n = require_size(j, "n");
  const std::size_t degree = require_size(j, "degree");
  const Json& comps = require(j, "components");
  if (!comps.is_array() || comps.size() != n) throw ParseError("\"components\" must hold n series");
  std::vector<NcSeries> out;
  for (const Json& c : comps) {
    Json cj = c;
    if (!cj.contains("n")) cj["n"] = n;
    if (!cj.contains("degree")) cj["degree"] = degree;
    NcSeries s = series_from_json(cj);
    if (s.n() != n || s.degree() != degree) throw ParseError("component n/degree differ from the symbol");
    out.push_back(std::move(s));
  }
  return SymbolTuple(std::move(out));
}

AutomorphismSpec automorphism_from_json(const Json& j) {
  AutomorphismSpec spec;
  const Json& lam = require(j, "lambda");
  if (!lam.is_array() || lam.empty()) throw ParseError("\"lambda\" must be a nonempty array");
  spec.lambda = Point(static_cast<Eigen::Index>(lam.size()));
  for (std::size_t i = 0; i < lam.size(); ++i) spec.lambda[static_cast<Eigen::Index>(i)] = complex_from_json(lam[i]);
  const auto n = spec.lambda.size();
  if (j.contains("unitary")) {
    const Json& u = j.at("unitary");
    if (!u.is_array() || static_cast<Eigen::Index>(u.size()) != n) throw ParseError("\"unitary\" must be n x n");
    spec.unitary = CMatrix(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = u[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("\"unitary\" must be n x n");
      for (Eigen::Index c = 0; c < n; ++c) spec.unitary(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
  } else {
    spec.unitary = CMatrix::Identity(n, n);
  }
  return spec;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 0;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 0;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col + 1), line,
                     col + 1);
  }
}

bool is_builtin_expression(const std::string& spec) {
  const std::string s = trim(spec);
  if (s == "swap") return true;
  const auto open = s.find('(');
  if (open == std::string::npos) return false;
  const std::string name = s.substr(0, open);
  for (const char* known : {"moebius", "unitary", "linear", "scale", "lft1", "affine", "automorphism"}) {
    if (name == known) return true;
  }
  return false;
}

SymbolTuple resolve_symbol(const std::string& spec, std::size_t degree) {
  if (!is_builtin_expression(spec)) {
    const Json j = parse_json_text(read_file(spec));
    SymbolTuple phi = symbol_from_json(j);
    if (degree == phi.degree()) return phi;
    return phi.truncated(degree);
  }
  const Builtin b = parse_builtin(spec);
  if (b.name == "swap") {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return SymbolTuple::linear(m, degree);
  }
  if (b.name == "moebius") {
    group_count(b, 1);
    const std::size_t n = option_n(b, b.groups[0].size());
    if (b.groups[0].size() > n) throw ParseError("moebius has more coordinates than n");
    Point lambda = Point::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < b.groups[0].size(); ++i) lambda[static_cast<Eigen::Index>(i)] = b.groups[0][i];
    return phi_lambda(lambda, degree);
  }
  if (b.name == "unitary") {
    group_count(b, 1);
    return phi_unitary(square_from(b.groups[0], "unitary"), degree);
  }
  if (b.name == "linear") {
    group_count(b, 1);
    return phi_unitary(square_from(b.groups[0], "linear"), degree, UnitaryCheck::allow_contraction);
  }
  if (b.name == "scale") {
    group_count(b, 1);
    if (b.groups[0].size() != 1) throw ParseError("scale takes one factor");
    const std::size_t n = option_n(b, 1);
    const auto ni = static_cast<Eigen::Index>(n);
    return SymbolTuple::linear(b.groups[0][0] * CMatrix::Identity(ni, ni), degree);
  }
  if (b.name == "lft1") {
    group_count(b, 1);
    if (b.groups[0].size() != 4) throw ParseError("lft1 takes a, b, c, d");
    LinearFractional f;
    f.a = CMatrix::Constant(1, 1, b.groups[0][0]);
    f.b = Eigen::RowVectorXcd::Constant(1, b.groups[0][1]);
    f.c = CVector::Constant(1, b.groups[0][2]);
    f.d = b.groups[0][3];
    f = LinearFractional::from_homogeneous(f.homogeneous());
    return SymbolTuple::from_linear_fractional(f, degree);
  }
  if (b.name == "affine") {
    group_count(b, 2);
    const auto n = static_cast<Eigen::Index>(b.groups[0].size());
    LinearFractional f;
    f.a = square_from(b.groups[1], "affine");
    if (f.a.rows() != n) throw ParseError("affine offset and matrix sizes differ");
    f.b = Eigen::RowVectorXcd(n);
    for (Eigen::Index i = 0; i < n; ++i) f.b[i] = b.groups[0][static_cast<std::size_t>(i)];
    f.c = CVector::Zero(n);
    f.d = 1.0;
    return SymbolTuple::from_linear_fractional(f, degree);
  }
  if (b.name == "automorphism") {
    const AutomorphismSpec a = resolve_automorphism(spec);
    SymbolTuple s = a.symbol(degree);
    return s;
  }
  throw ParseError("unknown builtin \"" + b.name + "\"");
}

AutomorphismSpec resolve_automorphism(const std::string& spec) {
  if (!is_builtin_expression(spec)) return automorphism_from_json(parse_json_text(read_file(spec)));
  const Builtin b = parse_builtin(spec);
  AutomorphismSpec a;
  if (b.name == "automorphism") {
    group_count(b, 2);
    const auto n = static_cast<Eigen::Index>(b.groups[0].size());
    a.lambda = Point(n);
    for (Eigen::Index i = 0; i < n; ++i) a.lambda[i] = b.groups[0][static_cast<std::size_t>(i)];
    a.unitary = square_from(b.groups[1], "automorphism");
  } else if (b.name == "unitary") {
    group_count(b, 1);
    a.unitary = square_from(b.groups[0], "unitary");
    a.lambda = Point::Zero(a.unitary.rows());
  } else if (b.name == "moebius") {
    group_count(b, 1);
    const std::size_t n = option_n(b, b.groups[0].size());
    a.lambda = Point::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < b.groups[0].size(); ++i) a.lambda[static_cast<Eigen::Index>(i)] = b.groups[0][i];
    a.unitary = CMatrix::Identity(a.lambda.size(), a.lambda.size());
  } else {
    throw ParseError("\"" + b.name + "\" does not describe an automorphism");
  }
  a.validate();
  return a;
}

}  // namespace fockc
