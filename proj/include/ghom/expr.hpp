#ifndef GHOM_EXPR_HPP
#define GHOM_EXPR_HPP

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "diagonal.hpp"
#include "error.hpp"
#include "graded.hpp"
#include "graph.hpp"

namespace ghom {

namespace detail {

inline bool is_integer_token(const std::string& t) {
  std::size_t i = (t.size() > 1 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace detail

/// Diagonal terms: "e f" is (ef)(ef)*, a bare vertex id is its idempotent,
/// "+"/"-" separate terms and a leading integer scales a term, e.g.
/// "2 e f - u + f".
inline DiagonalElement parse_diagonal(const Graph& g, const std::string& text) {
  DiagonalElement out;
  Integer sign = 1;
  Integer coeff = 1;
  bool have_coeff = false;
  std::vector<std::string> ids;

  auto flush = [&](bool at_end) {
    if (ids.empty()) {
      if (have_coeff && coeff == 0 && at_end) return;
      if (have_coeff) throw Error(ErrorKind::MalformedInput, "coefficient without a term in '" + text + "'");
      return;
    }
    Path p;
    if (ids.size() == 1 && g.find_vertex(ids[0]) && !g.find_edge(ids[0])) {
      p = vertex_path(*g.find_vertex(ids[0]));
    } else if (ids.size() == 1 && g.find_vertex(ids[0]) && g.find_edge(ids[0])) {
      throw Error(ErrorKind::MalformedInput, "'" + ids[0] + "' names both a vertex and an edge");
    } else {
      p = path_from_ids(g, ids);
    }
    out.add(p, sign * coeff);
    ids.clear();
    coeff = 1;
    have_coeff = false;
  };

  for (std::string tok : detail::split_ws(text)) {
    if (tok == "+" || tok == "-") {
      flush(false);
      sign = tok == "-" ? -1 : 1;
      continue;
    }
    if (ids.empty() && !have_coeff && detail::is_integer_token(tok)) {
      coeff = Integer(tok[0] == '+' ? tok.substr(1) : tok);
      have_coeff = true;
      continue;
    }
    if (ids.empty() && !g.find_vertex(tok) && !g.find_edge(tok) && tok.size() > 1 &&
        (tok[0] == '-' || tok[0] == '+')) {
      flush(false);
      sign = tok[0] == '-' ? -1 : 1;
      tok = tok.substr(1);
    }
    ids.push_back(tok);
  }
  flush(true);
  return out;
}

/// Graded elements: sums of "k a(v,n)" with optional sign, e.g.
/// "a(u,0) + 2 a(v,-1)" or "-a(u,-1)". "0" is the zero element.
inline StagedVector parse_staged(const Graph& g, const std::string& text) {
  StagedVector out(g.vertex_count());
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorKind::MalformedInput, what + " at offset " + std::to_string(i) + " in '" + text + "'");
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    std::string s = text.substr(start, i - start);
    if (!detail::is_integer_token(s)) throw fail("expected an integer");
    return s[0] == '+' ? s.substr(1) : s;
  };

  if (detail::split_ws(text) == std::vector<std::string>{"0"}) return out;
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) {
      if (first) throw fail("empty expression");
      break;
    }
    Integer sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    Integer coeff = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = Integer(read_int());
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    if (i >= text.size() || text[i] != 'a') throw fail("expected a(vertex,stage)");
    ++i;
    skip();
    if (i >= text.size() || text[i] != '(') throw fail("expected '('");
    ++i;
    skip();
    std::size_t start = i;
    while (i < text.size() && text[i] != ',' && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string vertex = text.substr(start, i - start);
    skip();
    if (i >= text.size() || text[i] != ',') throw fail("expected ','");
    ++i;
    skip();
    const Stage stage = std::stoll(read_int());
    skip();
    if (i >= text.size() || text[i] != ')') throw fail("expected ')'");
    ++i;
    out.add(stage, g.vertex(vertex), sign * coeff);
    first = false;
  }
  return out;
}

}  // namespace ghom

#endif
