#include <catch_amalgamated.hpp>

#include "ghom/diagonal.hpp"
#include "ghom/expr.hpp"
#include "ghom/homology.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace ghom;
using namespace ghom::testing;

namespace {

DiagonalElement D(const Graph& g, const std::string& text) { return parse_diagonal(g, text); }

SpecialEdgeChoice random_special(Rng& rng, const Graph& g) {
  SpecialEdgeChoice sp = SpecialEdgeChoice::lexicographic(g);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& out = g.out_edges(v);
    if (!out.empty()) sp.set(g, out[uniform(rng, 0, out.size() - 1)]);
  }
  return sp;
}

DiagonalElement random_element(Rng& rng, const Graph& g, std::size_t max_len, std::size_t terms) {
  const auto paths = enumerate_paths(g, max_len);
  DiagonalElement x;
  for (std::size_t k = 0; k < terms; ++k)
    x.add(paths[uniform(rng, 0, paths.size() - 1)], Integer(uniform_int(rng, -4, 4)));
  return x;
}

// Applies random expansion steps (or their reverse) without changing the
// element of the diagonal.
DiagonalElement scramble(Rng& rng, const Graph& g, DiagonalElement x, std::size_t steps) {
  for (std::size_t s = 0; s < steps && !x.is_zero(); ++s) {
    std::vector<Path> keys;
    for (const auto& [p, c] : x.terms()) keys.push_back(p);
    const Path p = keys[uniform(rng, 0, keys.size() - 1)];
    const Integer c = x.coefficient(p);
    if (g.is_sink(path_range(g, p))) continue;
    if (uniform(rng, 0, 1)) {
      x.add(p, -c);
      x.add(expand(g, p), c);
    } else {
      // Fold the expansion back in at an arbitrary integer multiple.
      const Integer k = uniform_int(rng, -2, 2);
      x.add(p, k);
      x.add(expand(g, p), -k);
    }
  }
  return x;
}

}  // namespace

TEST_CASE("expand: examples") {
  const Graph f = graph_F();
  CHECK(expand(f, vertex_path(0)) == D(f, "e + f"));
  const Graph e = graph_E();
  CHECK(expand(e, path_from_ids(e, {"f"})) == D(e, "f g"));
  const Graph s = make_graph(2, {{0, 1}});
  CHECK_THROWS_AS(expand(s, path_from_ids(s, {"e0"})), Error);
  CHECK_THROWS_AS(expand(s, vertex_path(1)), Error);
}

TEST_CASE("normal_form: examples") {
  const Graph f = graph_F();
  const auto spf = SpecialEdgeChoice::lexicographic(f);
  REQUIRE(spf.at(0) == f.edge_by_id("e"));
  CHECK(normal_form(f, D(f, "e"), spf) == D(f, "u - f"));

  const DiagonalElement basis = D(f, "3 f - 2 f f + u");
  CHECK(normal_form(f, basis, spf) == basis);

  const Graph e = graph_E();
  SpecialEdgeChoice spe = SpecialEdgeChoice::lexicographic(e);
  spe.set(e, e.edge_by_id("e"));
  spe.set(e, e.edge_by_id("g"));
  CHECK(normal_form(e, D(e, "f g"), spe) == D(e, "f"));
  CHECK(normal_form(f, DiagonalElement{}, spf).is_zero());
}

TEST_CASE("normal_form: output lies on the basis") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 4, 6);
    const auto sp = random_special(rng, g);
    const auto nf = normal_form(g, random_element(rng, g, 3, 5), sp);
    for (const auto& [p, c] : nf.terms()) {
      REQUIRE(c != 0);
      REQUIRE((p.trivial() || !sp.is_special(g, p.edges.back())));
    }
  }
}

TEST_CASE("normal_form: confluent under random rewrite orders and expansions") {
  Rng rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const Graph g = random_graph(rng, 4, 6);
    const auto sp = random_special(rng, g);
    const DiagonalElement x = random_element(rng, g, 3, uniform(rng, 1, 6));
    const DiagonalElement reference = normal_form(g, x, sp);
    INFO("trial " << trial << " x = " << to_string(g, x));
    const auto random_pick = [&](const std::vector<Path>& c) { return uniform(rng, 0, c.size() - 1); };
    REQUIRE(normal_form(g, x, sp, random_pick) == reference);
    REQUIRE(normal_form(g, x, sp, [](const std::vector<Path>&) { return std::size_t{0}; }) == reference);
    REQUIRE(normal_form(g, scramble(rng, g, x, 6), sp, random_pick) == reference);
  }
}

TEST_CASE("normal_form: idempotent") {
  Rng rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(rng, 4, 6);
    const auto sp = random_special(rng, g);
    const auto nf = normal_form(g, random_element(rng, g, 3, 5), sp);
    REQUIRE(normal_form(g, nf, sp) == nf);
  }
}

TEST_CASE("normal_form: agrees with the cylinder-set function") {
  Rng rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(rng, 4, 6);
    const auto sp = random_special(rng, g);
    const DiagonalElement x = random_element(rng, g, 3, 5);
    const DiagonalElement y = scramble(rng, g, x, 4);
    const std::size_t depth = std::max(longest_term(x), longest_term(y));
    const auto nf = normal_form(g, x, sp);
    REQUIRE(cylinder_function(g, nf, depth) == cylinder_function(g, x, depth));
    // Equal normal forms exactly when the cylinder functions agree.
    REQUIRE((normal_form(g, y, sp) == nf) == (cylinder_function(g, y, depth) == cylinder_function(g, x, depth)));
  }
}

TEST_CASE("normal_form: a nonzero normal form is a nonzero function") {
  Rng rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 3, 5);
    const auto sp = random_special(rng, g);
    const auto nf = normal_form(g, random_element(rng, g, 2, 4), sp);
    REQUIRE(nf.is_zero() == cylinder_function(g, nf, 2).empty());
  }
}

TEST_CASE("multiply: examples") {
  const Graph f = graph_F();
  CHECK(multiply(D(f, "e"), D(f, "e f")) == D(f, "e f"));
  CHECK(multiply(D(f, "e"), D(f, "f")).is_zero());
  CHECK(multiply(D(f, "u"), D(f, "e")) == D(f, "e"));
  CHECK(multiply(D(f, "e f"), D(f, "e")) == D(f, "e f"));
}

TEST_CASE("multiply: commutes with normal_form") {
  Rng rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(rng, 4, 6);
    const auto sp = random_special(rng, g);
    const auto x = random_element(rng, g, 2, 4), y = random_element(rng, g, 2, 4);
    REQUIRE(multiply(x, y) == multiply(y, x));
    REQUIRE(normal_form(g, multiply(x, y), sp) ==
            normal_form(g, multiply(normal_form(g, x, sp), normal_form(g, y, sp)), sp));
  }
}

TEST_CASE("to_h0_class: examples") {
  const Graph e = graph_E();
  CHECK(to_h0_class(e, D(e, "f")) == make_vector({0, 1}));
  CHECK(to_h0_class(e, DiagonalElement{}) == make_vector({0, 0}));
  const Graph f = graph_F();
  CHECK(to_h0_class(f, D(f, "e + f - u")) == make_vector({1}));
  CHECK(h0_class(f, to_h0_class(f, D(f, "e + f - u"))).is_zero());
}

TEST_CASE("to_h0_class: an expansion differs by the relation column of its range") {
  Rng rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 4, 6);
    for (const auto& a : enumerate_paths(g, 2)) {
      const std::size_t v = path_range(g, a);
      if (g.is_sink(v)) continue;
      const IntVector lhs = to_h0_class(g, DiagonalElement::term(a));
      const IntVector rhs = to_h0_class(g, expand(g, a));
      const IntVector col = relation_column(g, v);
      for (std::size_t i = 0; i < lhs.size(); ++i) REQUIRE(lhs[i] - rhs[i] == col[i]);
    }
  }
}

TEST_CASE("parse_diagonal: syntax") {
  const Graph f = graph_F();
  CHECK(D(f, "0").is_zero());
  CHECK(D(f, "2 e f - u") == DiagonalElement::term(path_from_ids(f, {"e", "f"}), 2) -
                                  DiagonalElement::term(vertex_path(0)));
  CHECK(D(f, "e - e").is_zero());
  CHECK(to_string(f, D(f, "-3 f + u")) == to_string(f, D(f, "u - 3 f")));
  CHECK_THROWS_AS(D(f, "e x"), Error);
  CHECK_THROWS_AS(D(f, "2 +"), Error);
}
