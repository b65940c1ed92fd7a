#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyforge/errors.hpp"
#include "cyforge/period.hpp"
#include "cyforge/pfops.hpp"
#include "cyforge/polytope.hpp"

namespace cyforge {

using ordered_json = nlohmann::ordered_json;

// --- vertex matrix files (PALP-style: "rows cols" header, then integers) ---

// c = 4: rows are points; else r = 4: columns are points. The ambiguous 4x4
// case defaults to rows-are-points; columns_override flips that one case.
inline LatticePolytope parse_vertex_matrix(const std::string& text,
                                           bool columns_override = false) {
  std::istringstream in(text);
  std::string header;
  while (std::getline(in, header)) {
    auto pos = header.find_first_not_of(" \t\r");
    if (pos != std::string::npos && header[pos] != '#') break;
  }
  std::istringstream hs(header);
  long r = 0, c = 0;
  if (!(hs >> r >> c) || r <= 0 || c <= 0)
    throw MalformedHeader("expected a 'rows cols' header line");
  bool rows_are_points;
  if (r == 4 && c == 4)
    rows_are_points = !columns_override;
  else if (c == 4)
    rows_are_points = true;
  else if (r == 4)
    rows_are_points = false;
  else
    throw DimensionNotFour("neither matrix dimension is 4");
  std::vector<Int> entries;
  entries.reserve(r * c);
  std::string tok;
  while (in >> tok) {
    try {
      entries.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw MalformedHeader("non-integer matrix entry '" + tok + "'");
    }
  }
  if (static_cast<long>(entries.size()) != r * c)
    throw MalformedHeader("expected " + std::to_string(r * c) +
                          " matrix entries, got " + std::to_string(entries.size()));
  std::vector<LatticePoint> pts;
  long npts = rows_are_points ? r : c;
  for (long p = 0; p < npts; ++p) {
    LatticePoint v;
    for (int i = 0; i < 4; ++i)
      v[i] = rows_are_points ? entries[p * 4 + i] : entries[i * c + p];
    pts.push_back(v);
  }
  return LatticePolytope(std::move(pts));
}

inline std::string render_vertex_matrix(const LatticePolytope& p) {
  std::ostringstream os;
  os << p.vertices().size() << " 4\n";
  for (const auto& v : p.vertices()) {
    for (int i = 0; i < 4; ++i) os << (i ? " " : "") << v[i].get_str();
    os << "\n";
  }
  return os.str();
}

// --- Laurent expressions ---
// expression := term ('+' term)*
// term       := group ('/' group)*        (later groups divide)
// group      := '1' | factor ('*'? factor)*
// factor     := 't' index ('^' signed-integer)?

namespace detail {

struct LaurentParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit LaurentParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  long parse_integer(bool allow_sign) {
    skip_ws();
    std::size_t start = pos;
    if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw SyntaxError("expected an integer", start);
    return std::stol(s.substr(start, pos - start));
  }

  // single t<i>[^e] factor into the exponent vector
  void parse_factor(std::array<long, 4>& e, int sign) {
    skip_ws();
    if (pos >= s.size() || s[pos] != 't')
      throw SyntaxError("expected a variable 't<index>'", pos);
    ++pos;
    long idx = parse_integer(false);
    if (idx < 1 || idx > 4)
      throw VariableIndexOutOfRange("variable index " + std::to_string(idx) +
                                    " outside 1..4");
    long p = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      p = parse_integer(true);
      if (pos < s.size() && s[pos] == '^')
        throw SyntaxError("repeated exponent", pos);
    }
    e[idx - 1] += sign * p;
  }

  bool at_factor_start() {
    skip_ws();
    return pos < s.size() && s[pos] == 't';
  }

  void parse_group(std::array<long, 4>& e, int sign) {
    skip_ws();
    if (pos < s.size() && s[pos] == '1') {
      ++pos;
      return;
    }
    parse_factor(e, sign);
    while (true) {
      std::size_t save = pos;
      if (eat('*')) {
        parse_factor(e, sign);
        continue;
      }
      pos = save;
      if (at_factor_start()) {
        parse_factor(e, sign);
        continue;
      }
      break;
    }
  }

  std::array<long, 4> parse_term() {
    std::array<long, 4> e{0, 0, 0, 0};
    parse_group(e, +1);
    while (eat('/')) parse_group(e, -1);
    return e;
  }

  std::vector<std::array<long, 4>> parse_expression() {
    std::vector<std::array<long, 4>> out;
    out.push_back(parse_term());
    while (true) {
      skip_ws();
      if (pos >= s.size()) break;
      if (!eat('+'))
        throw SyntaxError("expected '+' between terms", pos);
      out.push_back(parse_term());
    }
    return out;
  }
};

}  // namespace detail

inline Support parse_laurent(const std::string& text) {
  detail::LaurentParser p(text);
  auto monomials = p.parse_expression();
  for (std::size_t i = 0; i < monomials.size(); ++i)
    for (std::size_t j = i + 1; j < monomials.size(); ++j)
      if (monomials[i] == monomials[j])
        throw DuplicateMonomial("monomials " + std::to_string(i + 1) + " and " +
                                std::to_string(j + 1) + " coincide");
  return Support(std::move(monomials));
}

inline std::string render_laurent(const Support& s) {
  std::ostringstream os;
  bool first_term = true;
  for (const auto& e : s.monomials) {
    if (!first_term) os << " + ";
    first_term = false;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      if (!first) os << "*";
      first = false;
      os << "t" << (i + 1);
      if (e[i] != 1) os << "^" << e[i];
    }
    if (first) os << "1";  // cannot happen for a valid Support
  }
  return os.str();
}

// --- operator rendering ---

inline ordered_json operator_to_json(const DiffOperator& op, int gap = 1) {
  ordered_json j;
  j["theta_order"] = 4;
  j["degree"] = op.degree();
  j["gap"] = gap;
  ordered_json rows = ordered_json::array();
  for (int n = 0; n <= op.degree(); ++n) {
    ordered_json row = ordered_json::array();
    for (int i = 0; i <= 4; ++i) row.push_back(to_string(op.coeff(n, i)));
    rows.push_back(row);
  }
  j["c"] = rows;
  return j;
}

inline DiffOperator operator_from_json(const ordered_json& j) {
  if (!j.contains("c") || !j["c"].is_array() || j["c"].empty())
    throw Error("operator JSON: missing coefficient table");
  const auto& rows = j["c"];
  for (int i = 0; i <= 4; ++i) {
    Rat c = parse_rat(rows[0][i].get<std::string>());
    if (c != (i == 4 ? 1 : 0))
      throw Error("operator JSON: row 0 must be the monic theta^4 row");
  }
  std::vector<std::array<Rat, 5>> tail;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    std::array<Rat, 5> row;
    for (int i = 0; i <= 4; ++i) row[i] = parse_rat(rows[n][i].get<std::string>());
    tail.push_back(std::move(row));
  }
  return DiffOperator(std::move(tail));
}

}  // namespace cyforge
