#ifndef GHOM_GRAPH_HPP
#define GHOM_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "integer.hpp"
#include "matrix.hpp"

namespace ghom {

using Weight = std::int64_t;
using Stage = std::int64_t;

struct Edge {
  std::string id;
  std::size_t src;
  std::size_t dst;
  Weight weight = 1;
};

/// Finite directed multigraph with an integer weight (the degree cocycle) on
/// every edge. Vertex and edge order are the construction order and are
/// significant: every matrix and report uses them.
class Graph {
 public:
  Graph() = default;

  struct EdgeSpec {
    std::string id;
    std::string src;
    std::string dst;
    Weight weight = 1;
  };

  Graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges)
      : vertices_(std::move(vertices)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (!vertex_index_.emplace(vertices_[i], i).second)
        throw Error(ErrorKind::DuplicateId, "duplicate vertex id '" + vertices_[i] + "'");
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
      auto s = vertex_index_.find(e.src);
      if (s == vertex_index_.end())
        throw Error(ErrorKind::DanglingEndpoint,
                    "dangling endpoint: edge '" + e.id + "' has unknown src '" + e.src + "'");
      auto d = vertex_index_.find(e.dst);
      if (d == vertex_index_.end())
        throw Error(ErrorKind::DanglingEndpoint,
                    "dangling endpoint: edge '" + e.id + "' has unknown dst '" + e.dst + "'");
      if (!edge_index_.emplace(e.id, edges_.size()).second)
        throw Error(ErrorKind::DuplicateId, "duplicate edge id '" + e.id + "'");
      edges_.push_back(Edge{e.id, s->second, d->second, e.weight});
    }
    out_.assign(vertices_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) out_[edges_[i].src].push_back(i);
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_id(std::size_t v) const { return vertices_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  /// Edges with source v, in edge order.
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }
  bool is_sink(std::size_t v) const { return out_.at(v).empty(); }

  std::optional<std::size_t> find_vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t vertex(const std::string& id) const {
    if (auto v = find_vertex(id)) return *v;
    throw Error(ErrorKind::UnknownId, "unknown vertex '" + id + "'");
  }
  std::size_t edge_by_id(const std::string& id) const {
    if (auto e = find_edge(id)) return *e;
    throw Error(ErrorKind::UnknownId, "unknown edge '" + id + "'");
  }

  bool has_sinks() const {
    for (std::size_t v = 0; v < vertex_count(); ++v)
      if (is_sink(v)) return true;
    return false;
  }
  bool unit_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1; });
  }
  bool positive_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight >= 1; });
  }
  Weight max_weight() const {
    Weight w = 1;
    for (const auto& e : edges_) w = std::max(w, e.weight);
    return w;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
};

// ---------------------------------------------------------------------------
// Graph files

/// {"vertices": [...], "edges": [{"id", "src", "dst", "weight"?}, ...]}
inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::MalformedInput, "graph file must hold a JSON object");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw Error(ErrorKind::MalformedInput, "graph file needs a \"vertices\" array");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw Error(ErrorKind::MalformedInput, "vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<Graph::EdgeSpec> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw Error(ErrorKind::MalformedInput, "\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_object()) throw Error(ErrorKind::MalformedInput, "edges must be objects");
      for (const char* key : {"id", "src", "dst"})
        if (!e.contains(key) || !e[key].is_string())
          throw Error(ErrorKind::MalformedInput, std::string("edge field \"") + key + "\" must be a string");
      Graph::EdgeSpec spec{e["id"].get<std::string>(), e["src"].get<std::string>(),
                           e["dst"].get<std::string>(), 1};
      if (e.contains("weight")) {
        if (!e["weight"].is_number_integer())
          throw Error(ErrorKind::MalformedInput, "weight of edge '" + spec.id + "' must be an integer");
        spec.weight = e["weight"].get<Weight>();
      }
      edges.push_back(std::move(spec));
    }
  }
  return Graph(std::move(vertices), edges);
}

inline Graph parse_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("malformed JSON: ") + e.what());
  }
  return graph_from_json(j);
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices();
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"id", e.id}, {"src", g.vertex_id(e.src)}, {"dst", g.vertex_id(e.dst)},
                          {"weight", e.weight}});
  return j;
}

inline std::string serialize_graph(const Graph& g) { return graph_to_json(g).dump(); }

/// Vertices v0..v{n-1}; a[i][j] parallel edges named e_i_j_k.
inline Graph graph_from_adjacency(const IntMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "adjacency matrix must be square");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < a.rows(); ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<Graph::EdgeSpec> edges;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) < 0) throw Error(ErrorKind::MalformedInput, "adjacency entries must be nonnegative");
      if (!a(i, j).fits_ulong_p() || a(i, j) > 1000000)
        throw Error(ErrorKind::MalformedInput, "adjacency entry too large to expand into edges");
      const unsigned long count = a(i, j).get_ui();
      for (unsigned long k = 0; k < count; ++k)
        edges.push_back({"e" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k),
                         vertices[i], vertices[j], 1});
    }
  return Graph(vertices, edges);
}

// ---------------------------------------------------------------------------
// Vertex classes and adjacency

enum class VertexClass { Regular, Sink };

inline const char* to_string(VertexClass c) { return c == VertexClass::Regular ? "regular" : "sink"; }

inline std::vector<VertexClass> classify_vertices(const Graph& g) {
  std::vector<VertexClass> out(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out[v] = g.is_sink(v) ? VertexClass::Sink : VertexClass::Regular;
  return out;
}

inline std::vector<std::size_t> regular_vertices(const Graph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) out.push_back(v);
  return out;
}

/// A[u][v] = number of edges u -> v; weights ignored.
inline IntMatrix adjacency(const Graph& g) {
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (const auto& e : g.edges()) a(e.src, e.dst) += 1;
  return a;
}

// ---------------------------------------------------------------------------
// Paths

/// A finite path: either the trivial path at `start` (no edges) or a
/// composable edge sequence starting at `start`.
struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> edges;

  bool trivial() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }

  auto operator<=>(const Path& o) const {
    if (auto c = edges.size() <=> o.edges.size(); c != 0) return c;
    if (auto c = start <=> o.start; c != 0) return c;
    return edges <=> o.edges;
  }
  bool operator==(const Path&) const = default;
};

inline Path vertex_path(std::size_t v) { return Path{v, {}}; }

inline std::size_t path_range(const Graph& g, const Path& p) {
  return p.trivial() ? p.start : g.edge(p.edges.back()).dst;
}

inline Weight path_weight(const Graph& g, const Path& p) {
  Weight w = 0;
  for (auto e : p.edges) w += g.edge(e).weight;
  return w;
}

inline Path make_path(const Graph& g, const std::vector<std::size_t>& edges) {
  if (edges.empty()) throw Error(ErrorKind::Precondition, "an empty path needs an anchor vertex");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (g.edge(edges[i - 1]).dst != g.edge(edges[i]).src)
      throw Error(ErrorKind::Precondition,
                  "edges '" + g.edge(edges[i - 1]).id + "' and '" + g.edge(edges[i]).id + "' do not compose");
  return Path{g.edge(edges.front()).src, edges};
}

inline Path path_from_ids(const Graph& g, const std::vector<std::string>& ids) {
  std::vector<std::size_t> edges;
  for (const auto& id : ids) edges.push_back(g.edge_by_id(id));
  return make_path(g, edges);
}

inline Path extend(const Path& p, std::size_t e) {
  Path q = p;
  q.edges.push_back(e);
  return q;
}

inline std::string path_to_string(const Graph& g, const Path& p) {
  if (p.trivial()) return g.vertex_id(p.start);
  std::string s;
  for (auto e : p.edges) {
    if (!s.empty()) s += ' ';
    s += g.edge(e).id;
  }
  return s;
}

/// All paths of length 0..max_len. Order: by length; vertices in vertex
/// order; longer paths lexicographically by their edge-id sequences.
inline std::vector<Path> enumerate_paths(const Graph& g, std::size_t max_len) {
  std::vector<std::size_t> by_id(g.edge_count());
  std::iota(by_id.begin(), by_id.end(), std::size_t{0});
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t a, std::size_t b) { return g.edge(a).id < g.edge(b).id; });

  std::vector<Path> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out.push_back(vertex_path(v));
  if (max_len == 0) return out;

  std::vector<Path> layer;
  for (auto e : by_id) layer.push_back(Path{g.edge(e).src, {e}});
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (len == max_len) break;
    std::vector<Path> next;
    for (const auto& p : layer)
      for (auto e : by_id)
        if (g.edge(e).src == path_range(g, p)) next.push_back(extend(p, e));
    layer = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Covering graph

struct StagedVertex {
  std::size_t vertex;
  Stage stage;
  bool operator==(const StagedVertex&) const = default;
};

struct StagedEdge {
  std::size_t edge;
  Stage stage;
  bool operator==(const StagedEdge&) const = default;
};

/// Window [n_min, n_max] of the covering graph: vertex (v, n) for every n in
/// the window, edge (e, n) from (s(e), n) to (r(e), n - w(e)) whenever both
/// stages lie in the window. `graph` carries ids "v@n" and "e@n".
struct StagedGraph {
  Graph graph;
  std::vector<StagedVertex> vertices;
  std::vector<StagedEdge> edges;
  Stage n_min = 0;
  Stage n_max = 0;

  std::optional<std::size_t> index_of(std::size_t vertex, Stage stage, std::size_t base_vertices) const {
    if (stage < n_min || stage > n_max) return std::nullopt;
    return static_cast<std::size_t>(stage - n_min) * base_vertices + vertex;
  }
};

inline std::string staged_id(const std::string& id, Stage n) { return id + "@" + std::to_string(n); }

inline StagedGraph covering_graph(const Graph& g, Stage n_min, Stage n_max) {
  if (n_min > n_max)
    throw Error(ErrorKind::Precondition,
                "empty window [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "]");
  StagedGraph out;
  out.n_min = n_min;
  out.n_max = n_max;
  std::vector<std::string> ids;
  for (Stage n = n_min; n <= n_max; ++n)
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      out.vertices.push_back({v, n});
      ids.push_back(staged_id(g.vertex_id(v), n));
    }
  std::vector<Graph::EdgeSpec> specs;
  for (Stage n = n_min; n <= n_max; ++n)
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const Edge& e = g.edge(i);
      const Stage target = n - e.weight;
      if (target < n_min || target > n_max) continue;
      out.edges.push_back({i, n});
      specs.push_back({staged_id(e.id, n), staged_id(g.vertex_id(e.src), n),
                       staged_id(g.vertex_id(e.dst), target), e.weight});
    }
  out.graph = Graph(std::move(ids), specs);
  return out;
}

}  // namespace ghom

#endif
