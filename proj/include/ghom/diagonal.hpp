#ifndef GHOM_DIAGONAL_HPP
#define GHOM_DIAGONAL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "integer.hpp"

namespace ghom {

/// One chosen outgoing edge per regular vertex; sinks map to nothing.
class SpecialEdgeChoice {
 public:
  /// Lexicographically smallest edge id at each regular vertex.
  static SpecialEdgeChoice lexicographic(const Graph& g) {
    SpecialEdgeChoice sp;
    sp.edge_.assign(g.vertex_count(), std::nullopt);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (auto e : g.out_edges(v))
        if (!sp.edge_[v] || g.edge(e).id < g.edge(*sp.edge_[v]).id) sp.edge_[v] = e;
    return sp;
  }

  /// Replace the choice at s(e) by e.
  void set(const Graph& g, std::size_t e) { edge_.at(g.edge(e).src) = e; }

  std::optional<std::size_t> at(std::size_t v) const { return edge_.at(v); }
  bool is_special(const Graph& g, std::size_t e) const { return edge_.at(g.edge(e).src) == e; }

 private:
  std::vector<std::optional<std::size_t>> edge_;
};

/// Finite Z-combination of projections aa*, keyed by the path a.
class DiagonalElement {
 public:
  using Terms = std::map<Path, Integer>;

  DiagonalElement() = default;
  static DiagonalElement term(const Path& p, const Integer& c = 1) {
    DiagonalElement x;
    x.add(p, c);
    return x;
  }

  void add(const Path& p, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const DiagonalElement& o, const Integer& scale = 1) {
    for (const auto& [p, c] : o.terms_) add(p, scale * c);
  }

  Integer coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend DiagonalElement operator+(DiagonalElement a, const DiagonalElement& b) {
    a.add(b);
    return a;
  }
  friend DiagonalElement operator-(DiagonalElement a, const DiagonalElement& b) {
    a.add(b, -1);
    return a;
  }
  bool operator==(const DiagonalElement&) const = default;

 private:
  Terms terms_;
};

inline std::string to_string(const Graph& g, const DiagonalElement& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [p, c] : x.terms()) {
    std::string body = path_to_string(g, p);
    if (s.empty()) {
      if (c == -1) s += "-";
      else if (c != 1) s += to_decimal(c) + " ";
    } else {
      s += c < 0 ? " - " : " + ";
      Integer m = abs(c);
      if (m != 1) s += to_decimal(m) + " ";
    }
    s += body;
  }
  return s;
}

/// aa* = sum over e in s^-1(r(a)) of (ae)(ae)*.
inline DiagonalElement expand(const Graph& g, const Path& alpha) {
  const std::size_t v = path_range(g, alpha);
  if (g.is_sink(v))
    throw Error(ErrorKind::Precondition, "cannot expand '" + path_to_string(g, alpha) +
                                             "': its range '" + g.vertex_id(v) + "' is a sink");
  DiagonalElement out;
  for (auto e : g.out_edges(v)) out.add(extend(alpha, e), 1);
  return out;
}

namespace detail {

inline bool reducible(const Graph& g, const SpecialEdgeChoice& sp, const Path& p) {
  return !p.trivial() && sp.is_special(g, p.edges.back());
}

// c (b s)(b s)* -> c bb* - c sum_{e != s} (b e)(b e)*, with s special at r(b).
inline void rewrite_special_suffix(const Graph& g, DiagonalElement& x, const Path& p, const Integer& c) {
  const std::size_t s = p.edges.back();
  const std::size_t v = g.edge(s).src;
  Path base = p;
  base.edges.pop_back();
  x.add(p, -c);
  x.add(base, c);
  for (auto e : g.out_edges(v))
    if (e != s) x.add(extend(base, e), -c);
}

}  // namespace detail

/// Rewrites x onto the basis of projections whose path is trivial or ends in
/// a non-special edge. `pick(candidates)` chooses which reducible term to
/// rewrite next; the result does not depend on the choices.
template <class Picker>
DiagonalElement normal_form(const Graph& g, DiagonalElement x, const SpecialEdgeChoice& sp, Picker&& pick) {
  std::vector<Path> candidates;
  for (;;) {
    candidates.clear();
    for (const auto& [p, c] : x.terms())
      if (detail::reducible(g, sp, p)) candidates.push_back(p);
    if (candidates.empty()) return x;
    const Path chosen = candidates.at(pick(candidates));
    const Integer c = x.coefficient(chosen);
    detail::rewrite_special_suffix(g, x, chosen, c);
  }
}

inline DiagonalElement normal_form(const Graph& g, DiagonalElement x, const SpecialEdgeChoice& sp) {
  // Rewrites the longest reducible term first.
  for (;;) {
    const Path* target = nullptr;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
      if (detail::reducible(g, sp, it->first)) {
        target = &it->first;
        break;
      }
    if (!target) return x;
    const Path p = *target;
    detail::rewrite_special_suffix(g, x, p, x.coefficient(p));
  }
}

inline bool is_prefix(const Path& a, const Path& b) {
  if (a.start != b.start || a.edges.size() > b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i] != b.edges[i]) return false;
  return true;
}

/// (aa*)(bb*) = bb* if a is a prefix of b, aa* if b is a prefix of a, else 0.
inline DiagonalElement multiply(const DiagonalElement& x, const DiagonalElement& y) {
  DiagonalElement out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      if (is_prefix(a, b)) out.add(b, ca * cb);
      else if (is_prefix(b, a)) out.add(a, ca * cb);
    }
  return out;
}

/// m aa* -> m [r(a)] in Z^{E^0}.
inline IntVector to_h0_class(const Graph& g, const DiagonalElement& x) {
  IntVector v(g.vertex_count(), Integer(0));
  for (const auto& [p, c] : x.terms()) v[path_range(g, p)] += c;
  return v;
}

}  // namespace ghom

#endif
