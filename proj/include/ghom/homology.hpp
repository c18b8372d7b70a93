#ifndef GHOM_HOMOLOGY_HPP
#define GHOM_HOMOLOGY_HPP

#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "smith.hpp"
#include "verdict.hpp"

namespace ghom {

/// Z^{E^0} modulo one relation column per regular vertex v:
/// [v] - sum over e in s^-1(v) of [r(e)].
struct H0Presentation {
  std::size_t ambient_rank = 0;
  std::vector<std::size_t> relation_vertices;
  IntMatrix relations;
};

inline IntVector relation_column(const Graph& g, std::size_t v) {
  IntVector col(g.vertex_count(), Integer(0));
  col[v] += 1;
  for (auto e : g.out_edges(v)) col[g.edge(e).dst] -= 1;
  return col;
}

inline H0Presentation h0_presentation(const Graph& g) {
  H0Presentation p;
  p.ambient_rank = g.vertex_count();
  p.relation_vertices = regular_vertices(g);
  std::vector<IntVector> cols;
  for (auto v : p.relation_vertices) cols.push_back(relation_column(g, v));
  p.relations = IntMatrix::from_columns(g.vertex_count(), cols);
  return p;
}

inline FpAbelianGroup h0(const Graph& g) { return cokernel(h0_presentation(g).relations); }

inline CokernelCoordinates h0_class(const Graph& g, const IntVector& v) {
  if (v.size() != g.vertex_count())
    throw Error(ErrorKind::DimensionMismatch, "class vector has length " + std::to_string(v.size()) +
                                                  ", graph has " + std::to_string(g.vertex_count()) +
                                                  " vertices");
  return CokernelMap(h0_presentation(g).relations).coordinates(v);
}

/// Truncated diagonal presentation: generators aa* for |a| <= max_len,
/// relations aa* - sum (ae)(ae)* (|a| < max_len, r(a) regular) and
/// r(a) - aa* (1 <= |a| <= max_len). Its cokernel is H0 for any max_len >= 1.
inline IntMatrix h0_oracle_presentation(const Graph& g, std::size_t max_len) {
  if (max_len == 0) throw Error(ErrorKind::Precondition, "oracle needs max_len >= 1");
  const auto paths = enumerate_paths(g, max_len);
  std::map<Path, std::size_t> index;
  for (std::size_t i = 0; i < paths.size(); ++i) index.emplace(paths[i], i);

  std::vector<IntVector> cols;
  for (const auto& a : paths) {
    const std::size_t r = path_range(g, a);
    if (a.length() < max_len && !g.is_sink(r)) {
      IntVector col(paths.size(), Integer(0));
      col[index.at(a)] += 1;
      for (auto e : g.out_edges(r)) col[index.at(extend(a, e))] -= 1;
      cols.push_back(std::move(col));
    }
    if (a.length() >= 1) {
      IntVector col(paths.size(), Integer(0));
      col[index.at(vertex_path(r))] += 1;
      col[index.at(a)] -= 1;
      cols.push_back(std::move(col));
    }
  }
  return IntMatrix::from_columns(paths.size(), cols);
}

inline FpAbelianGroup h0_bruteforce_oracle(const Graph& g, std::size_t max_len) {
  return cokernel(h0_oracle_presentation(g, max_len));
}

/// Budget on visited vectors for one side of the cone search, independent of
/// the depth cap so that raising the cap only extends the same search.
inline constexpr std::size_t kConeSearchNodes = 50000;

namespace detail {

// Breadth-first over v + Z-combinations of relation columns, depth <= cap.
inline bool homologous_to_nonnegative(const IntMatrix& rel, const IntVector& v, std::size_t cap) {
  if (is_nonnegative(v)) return true;
  std::set<IntVector> seen{v};
  std::deque<std::pair<IntVector, std::size_t>> queue{{v, 0}};
  while (!queue.empty()) {
    auto [x, depth] = std::move(queue.front());
    queue.pop_front();
    if (depth == cap) continue;
    for (std::size_t j = 0; j < rel.cols(); ++j)
      for (int sign : {1, -1}) {
        IntVector y = x;
        for (std::size_t i = 0; i < y.size(); ++i)
          if (rel(i, j) != 0) y[i] += sign * rel(i, j);
        if (!seen.insert(y).second) continue;
        if (is_nonnegative(y)) return true;
        if (seen.size() >= kConeSearchNodes) return false;
        queue.emplace_back(std::move(y), depth + 1);
      }
  }
  return false;
}

// A nonnegative f with f^T rel = 0 is a state on H0: f(v) < 0 proves that
// the class of v has no nonnegative representative.
inline bool state_excludes(const IntMatrix& rel, const IntVector& v) {
  const IntMatrix states = kernel_basis(rel.transpose());
  for (std::size_t r = 0; r < states.rows(); ++r) {
    IntVector f(states.row(r).begin(), states.row(r).end());
    if (!is_nonnegative(f)) {
      for (auto& x : f) x = -x;
      if (!is_nonnegative(f)) continue;
    }
    Integer value = 0;
    for (std::size_t i = 0; i < f.size(); ++i) value += f[i] * v[i];
    if (value < 0) return true;
  }
  return false;
}

}  // namespace detail

/// Positive when a nonnegative vector homologous to v is reached within `cap`
/// relation moves. Negative when -v is reached that way and a state certifies
/// that v itself is not positive. Otherwise Unknown.
inline Verdict h0_is_positive(const Graph& g, const IntVector& v, std::size_t cap) {
  if (v.size() != g.vertex_count())
    throw Error(ErrorKind::DimensionMismatch, "class vector length differs from vertex count");
  const IntMatrix rel = h0_presentation(g).relations;
  if (detail::homologous_to_nonnegative(rel, v, cap)) return Verdict::Positive;
  IntVector neg = v;
  for (auto& x : neg) x = -x;
  if (detail::homologous_to_nonnegative(rel, neg, cap) && detail::state_excludes(rel, v))
    return Verdict::Negative;
  return Verdict::Unknown;
}

}  // namespace ghom

#endif
