#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pagestream/errors.hpp"
#include "pagestream/graph.hpp"
#include "pagestream/programs.hpp"
#include "support.hpp"

using namespace pagestream;
using namespace testsupport;

namespace {

// Apply combine/better relaxations in a randomized order until fixpoint.
std::vector<Value> random_schedule_fixpoint(const EdgeList& el, const VertexProgram& program,
                                            std::mt19937_64& rng) {
  VertexValues values(el.num_vertices, program);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> order(el.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const Edge& e = el.edges[i];
      const Weight w = el.weighted() ? el.weights[i] : 1;
      const Value cand = program.combine(values.load(e.src), w);
      const Value before = values.load(e.dst);
      if (values.improve(e.dst, cand)) {
        changed = true;
        CHECK(values.load(e.dst) < before);  // monotone: values only decrease
      }
    }
  }
  return values.snapshot();
}

}  // namespace

TEST_CASE("bfs program on a path") {
  EdgeList el = make_graph(3, {{0, 1}, {1, 2}});
  VertexProgram p = make_bfs(0, 3);
  std::mt19937_64 rng(1);
  CHECK(random_schedule_fixpoint(el, p, rng) == std::vector<Value>{0, 1, 2});
}

TEST_CASE("bfs leaves unreachable vertices at the sentinel") {
  EdgeList el = make_graph(3, {{0, 1}});
  VertexProgram p = make_bfs(0, 3);
  std::mt19937_64 rng(2);
  CHECK(random_schedule_fixpoint(el, p, rng) == std::vector<Value>{0, 1, kUnreached});
}

TEST_CASE("combine absorbs on the identity and saturates") {
  VertexProgram bfs = make_bfs(0, 4);
  CHECK(bfs.combine(kUnreached, 1) == kUnreached);
  CHECK(bfs.combine(0, 1) == 1);

  VertexProgram sssp = make_sssp(0, 4, true);
  CHECK(sssp.combine(kUnreached, 9) == kUnreached);
  CHECK(sssp.combine(kUnreached - 1, 10) == kUnreached);  // would wrap
  CHECK(sssp.combine(3, 4) == 7);

  VertexProgram cc = make_cc();
  CHECK(cc.combine(5, 99) == 5);
  CHECK(cc.combine(kUnreached, 1) == kUnreached);
}

TEST_CASE("cc labels two components by minimum id") {
  EdgeList el = symmetrize(make_graph(4, {{0, 1}, {2, 3}}));
  std::mt19937_64 rng(3);
  CHECK(random_schedule_fixpoint(el, make_cc(), rng) == std::vector<Value>{0, 0, 2, 2});
}

TEST_CASE("cc six-vertex chain converges to the minimum label") {
  EdgeList el = symmetrize(make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}));
  const std::vector<Value> expected = brute_force_fixpoint(el, AlgoKind::Cc, 0);
  CHECK(expected == std::vector<Value>(6, 0));
  std::mt19937_64 rng(4);
  CHECK(random_schedule_fixpoint(el, make_cc(), rng) == expected);
}

TEST_CASE("cc with no edges keeps initial labels") {
  EdgeList el = make_graph(3, {});
  std::mt19937_64 rng(5);
  CHECK(random_schedule_fixpoint(el, make_cc(), rng) == std::vector<Value>{0, 1, 2});
}

TEST_CASE("sssp example verified by path enumeration") {
  EdgeList el = make_graph(3, {{0, 1}, {0, 2}, {2, 1}}, {5, 1, 2});
  const std::vector<Value> oracle = brute_force_sssp_paths(el, 0);
  CHECK(oracle == std::vector<Value>{0, 3, 1});
  VertexProgram p = make_sssp(0, 3, true);
  std::mt19937_64 rng(6);
  CHECK(random_schedule_fixpoint(el, p, rng) == oracle);
}

TEST_CASE("program factories validate their inputs") {
  CHECK_THROWS_AS(make_bfs(3, 3), ConfigError);
  CHECK_THROWS_AS(make_sssp(9, 3, true), ConfigError);
  CHECK_THROWS_AS(make_sssp(0, 3, false), ConfigError);
}

TEST_CASE("async-schedule independence on random graphs") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 40; ++iter) {
    EdgeList el = random_edge_list(rng, 12, 30, true);
    const VertexId source = el.num_vertices ? VertexId(rng() % el.num_vertices) : 0;

    for (AlgoKind kind : {AlgoKind::Bfs, AlgoKind::Cc, AlgoKind::Sssp}) {
      EdgeList graph = kind == AlgoKind::Cc ? symmetrize(el) : el;
      const std::vector<Value> oracle = brute_force_fixpoint(graph, kind, source);
      VertexProgram p;
      switch (kind) {
        case AlgoKind::Bfs: p = make_bfs(source, graph.num_vertices); break;
        case AlgoKind::Cc: p = make_cc(); break;
        case AlgoKind::Sssp: p = make_sssp(source, graph.num_vertices, true); break;
      }
      for (int rep = 0; rep < 3; ++rep)
        CHECK(random_schedule_fixpoint(graph, p, rng) == oracle);
    }
  }
}

TEST_CASE("vertex values keep the minimum under concurrent-style proposals") {
  VertexProgram p = make_bfs(0, 4);
  VertexValues values(4, p);
  CHECK(values.load(0) == 0);
  CHECK(values.load(3) == kUnreached);
  CHECK(values.improve(3, 7).has_value());
  CHECK_FALSE(values.improve(3, 9).has_value());  // worse proposal ignored
  auto displaced = values.improve(3, 2);
  REQUIRE(displaced.has_value());
  CHECK(*displaced == 7);
  CHECK(values.load(3) == 2);
}
