#include "signrank/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace signrank {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what, 0, 0); }

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is one past the offending character
    const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed JSON", line, col);
  }
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Rational parse_rational_json(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": expected an integer or a \"p/q\" string");
}

QuadElem parse_scalar(const json& j, std::int64_t d, const std::string& where) {
  if (j.is_object()) {
    const Rational r = parse_rational_json(member(j, "r", where), where + ".r");
    const Rational s = j.contains("s") ? parse_rational_json(j.at("s"), where + ".s") : Rational(0);
    if (sgn(s) != 0 && d == 1) fail(where + ": irrational part without \"sqrt\"");
    return QuadElem(r, s, d);
  }
  return QuadElem::from_rational(parse_rational_json(j, where), d);
}

json format_scalar(const QuadElem& x) {
  if (x.is_rational()) return to_string(x.r());
  return json{{"r", to_string(x.r())}, {"s", to_string(x.s())}};
}

std::vector<Sign> parse_signs(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a string over \"+-\"");
  const std::string s = j.get<std::string>();
  if (s.size() != n) fail(where + ": expected " + std::to_string(n) + " signs");
  std::vector<Sign> out;
  for (char c : s) {
    if (c != '+' && c != '-') fail(where + ": signs must be '+' or '-'");
    out.push_back(c == '+' ? Sign::Positive : Sign::Negative);
  }
  return out;
}

std::string format_signs(const std::vector<Sign>& v) {
  std::string s;
  for (Sign x : v) s += to_char(x);
  return s;
}

Eigen::MatrixXd parse_float_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(where + ": rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) fail(where + "[" + std::to_string(i) + "]: expected numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

json format_float_matrix(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

SignPattern parse_pattern(std::string_view text) {
  std::vector<std::string> rows;
  std::size_t line_no = 0, width = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string row;
    for (std::size_t c = 0; c < line.size(); ++c) {
      const char ch = line[c];
      if (ch == ' ' || ch == '\t' || ch == '\r') continue;
      if (ch != '+' && ch != '-' && ch != '0')
        throw ParseError(std::string("unexpected character '") + ch + "' in pattern", line_no, c + 1);
      row += ch;
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(width),
                       line_no, 1);
    }
    rows.push_back(std::move(row));
  }
  return SignPattern::from_rows(rows);
}

std::string format_pattern(const SignPattern& a, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += "# " + std::string(comment) + "\n";
  out += a.to_string();
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out;
}

Configuration parse_configuration(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("configuration: expected an object");
  Configuration c;
  const json& dim = member(j, "dim", "configuration");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) fail("configuration: \"dim\" must be a positive integer");
  c.dim = dim.get<std::size_t>();
  if (j.contains("sqrt")) {
    if (!j["sqrt"].is_number_integer()) fail("configuration: \"sqrt\" must be an integer");
    c.field_d = j["sqrt"].get<std::int64_t>();
    if (c.field_d < 1 || !is_square_free(c.field_d))
      fail("configuration: \"sqrt\" must be a positive square-free integer");
  }
  const json& pts = member(j, "points", "configuration");
  const json& hps = member(j, "hyperplanes", "configuration");
  if (!pts.is_array() || !hps.is_array()) fail("configuration: points and hyperplanes must be arrays");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!pts[i].is_array() || pts[i].size() != c.dim) fail(where + ": expected " + std::to_string(c.dim) + " coordinates");
    Point p;
    for (std::size_t k = 0; k < c.dim; ++k)
      p.coords.push_back(parse_scalar(pts[i][k], c.field_d, where + "[" + std::to_string(k) + "]"));
    c.points.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < hps.size(); ++i) {
    const std::string where = "hyperplanes[" + std::to_string(i) + "]";
    if (!hps[i].is_array() || hps[i].size() != c.dim + 1)
      fail(where + ": expected " + std::to_string(c.dim + 1) + " coefficients");
    OrientedHyperplane h;
    for (std::size_t k = 0; k <= c.dim; ++k)
      h.coeffs.push_back(parse_scalar(hps[i][k], c.field_d, where + "[" + std::to_string(k) + "]"));
    c.hyperplanes.push_back(std::move(h));
  }
  try {
    c.validate();
  } catch (const DomainError& e) {
    fail(std::string("configuration: ") + e.what());
  }
  return c;
}

std::string format_configuration(const Configuration& c) {
  json j;
  j["dim"] = c.dim;
  if (c.field_d != 1) j["sqrt"] = c.field_d;
  j["points"] = json::array();
  for (const auto& p : c.points) {
    json row = json::array();
    for (const auto& x : p.coords) row.push_back(format_scalar(x));
    j["points"].push_back(std::move(row));
  }
  j["hyperplanes"] = json::array();
  for (const auto& h : c.hyperplanes) {
    json row = json::array();
    for (const auto& x : h.coeffs) row.push_back(format_scalar(x));
    j["hyperplanes"].push_back(std::move(row));
  }
  return j.dump(1) + "\n";
}

Realization parse_realization(std::string_view text) {
  const json j = parse_json(text);
  Realization real;
  const json& r = member(j, "r", "realization");
  if (!r.is_number_integer() || r.get<long long>() < 1) fail("realization: \"r\" must be a positive integer");
  real.rank = r.get<std::size_t>();
  real.U = parse_float_matrix(member(j, "U", "realization"), "U");
  real.V = parse_float_matrix(member(j, "V", "realization"), "V");
  const auto rr = static_cast<Eigen::Index>(real.rank);
  if (real.U.cols() != rr || real.V.rows() != rr) fail("realization: U must be m x r and V r x n");
  for (Eigen::Index i = 0; i < real.U.rows(); ++i)
    if (real.U(i, 0) != 1) fail("realization: U(" + std::to_string(i + 1) + ",1) is not 1");
  for (Eigen::Index k = 0; k < real.V.cols(); ++k)
    if (real.V(rr - 1, k) != 1) fail("realization: last entry of V column " + std::to_string(k + 1) + " is not 1");
  const auto m = static_cast<std::size_t>(real.U.rows()), n = static_cast<std::size_t>(real.V.cols());
  real.row_signs = j.contains("row_signs") ? parse_signs(j["row_signs"], m, "row_signs")
                                           : std::vector<Sign>(m, Sign::Positive);
  real.col_signs = j.contains("col_signs") ? parse_signs(j["col_signs"], n, "col_signs")
                                           : std::vector<Sign>(n, Sign::Positive);
  if (j.contains("margin") && j["margin"].is_number()) real.margin = j["margin"].get<double>();
  return real;
}

std::string format_realization(const Realization& real) {
  json j;
  j["r"] = real.rank;
  j["U"] = format_float_matrix(real.U);
  j["V"] = format_float_matrix(real.V);
  j["row_signs"] = format_signs(real.row_signs);
  j["col_signs"] = format_signs(real.col_signs);
  j["margin"] = real.margin;
  return j.dump(1) + "\n";
}

RationalCertificate parse_certificate(std::string_view text) {
  const json j = parse_json(text);
  RationalCertificate cert;
  const json& rank = member(j, "rank", "certificate");
  if (!rank.is_number_integer() || rank.get<long long>() < 0) fail("certificate: \"rank\" must be a nonnegative integer");
  cert.rank = rank.get<std::size_t>();
  const json& target = member(j, "target", "certificate");
  if (!target.is_array()) fail("certificate: \"target\" must be an array of row strings");
  std::vector<std::string> rows;
  for (const auto& row : target) {
    if (!row.is_string()) fail("certificate: target rows must be strings");
    rows.push_back(row.get<std::string>());
  }
  try {
    cert.target = SignPattern::from_rows(rows);
  } catch (const Error& e) {
    fail(std::string("certificate target: ") + e.what());
  }
  const json& mat = member(j, "matrix", "certificate");
  if (!mat.is_array() || mat.size() != cert.target.rows()) fail("certificate: matrix and target shapes differ");
  cert.matrix = RationalMatrix(cert.target.rows(), cert.target.cols());
  for (std::size_t i = 0; i < mat.size(); ++i) {
    if (!mat[i].is_array() || mat[i].size() != cert.target.cols()) fail("certificate: matrix and target shapes differ");
    for (std::size_t k = 0; k < mat[i].size(); ++k)
      cert.matrix(i, k) = parse_rational_json(mat[i][k], "matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return cert;
}

std::string format_certificate(const RationalCertificate& cert) {
  json j;
  j["rank"] = cert.rank;
  j["target"] = json::array();
  for (std::size_t i = 0; i < cert.target.rows(); ++i) {
    std::string row;
    for (Sign s : cert.target.row(i)) row += to_char(s);
    j["target"].push_back(row);
  }
  j["matrix"] = json::array();
  for (std::size_t i = 0; i < cert.matrix.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < cert.matrix.cols(); ++k) row.push_back(to_string(cert.matrix(i, k)));
    j["matrix"].push_back(std::move(row));
  }
  return j.dump(1) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw DomainError("write to '" + path + "' failed");
}

}  // namespace signrank
