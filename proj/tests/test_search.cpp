#include <doctest.h>

#include "printers.hpp"
#include "polylog/dataset.hpp"
#include "polylog/error.hpp"
#include "polylog/infix.hpp"
#include "polylog/search.hpp"

using namespace polylog;

namespace {

DilogSum sum_of(const char* text) { return DilogSum::from_expr(parse_infix(text)); }
RationalFunc rf(const char* text) { return canonicalize_rational(parse_infix(text)); }

}  // namespace

TEST_CASE("trivial searches") {
  DilogSum zero = sum_of("Li2(x) - Li2(x)");
  CHECK(zero.empty());
  auto b = bfs_simplify(zero, 3);
  CHECK(b.solved);
  CHECK(b.depth == 0);
  CHECK(b.nodes_visited == 0);
  auto f = best_first_simplify(zero, 10);
  CHECK(f.solved);
  CHECK(f.nodes_visited == 0);
  std::mt19937_64 rng(1);
  CHECK(random_agent(zero, 50, rng).solved);
  CHECK_THROWS_AS(bfs_simplify(zero, -1), Error);
}

TEST_CASE("bfs finds the two-step undo") {
  // duplication on 2 Li2(x), then reflection on the cancelling -2 Li2(x)
  DilogSum s = DilogSum::from_terms({{-2, rf("-x")}, {1, rf("x^2")}, {2, rf("1-x")}});
  auto r = bfs_simplify(s, 3);
  CHECK(r.solved);
  CHECK(r.depth <= 2);
  CHECK(replay(s, r.path).empty());
  CHECK(r.unique_nodes <= r.nodes_visited);
}

TEST_CASE("bfs respects its depth and node budget") {
  std::vector<ScrambleStep> steps{{0, Identity::Reflection}, {0, Identity::Inversion}, {0, Identity::Duplication},
                                  {1, Identity::Reflection}, {0, Identity::Inversion}, {1, Identity::Inversion},
                                  {2, Identity::Reflection}};
  DilogSum start = DilogSum::from_terms({{3, rf("x+2")}, {2, rf("x^2-x")}});
  DilogSum scrambled = scramble(start, steps);
  std::vector<DilogTerm> zero_terms = scrambled.terms();
  zero_terms.push_back({-3, rf("x+2")});
  zero_terms.push_back({-2, rf("x^2-x")});
  DilogSum zero = DilogSum::from_terms(zero_terms);
  auto r = bfs_simplify(zero, 2);
  CHECK_FALSE(r.solved);
  CHECK(replay(zero, r.path) == r.final);
  CHECK(r.final.size() <= zero.size());
  CHECK_THROWS_AS(bfs_simplify(zero, 6, 100), Error);
}

TEST_CASE("best-first follows the tie chain") {
  // R I f - f with f = Li2(x)
  DilogSum s = DilogSum::from_terms({{1, rf("1-1/x")}, {-1, rf("x")}});
  auto r = best_first_simplify(s, 10);
  CHECK(r.solved);
  CHECK(r.depth == 2);
  REQUIRE(r.path.size() == 3);
  CHECK(r.path[0] == PathStep{Action::Reflection, 0});
  CHECK(r.path[1] == PathStep{Action::Cyclic, 0});
  CHECK(r.path[2].action == Action::Inversion);
  CHECK(r.nodes_visited == 12);
  CHECK(replay(s, r.path).empty());
}

TEST_CASE("search outcomes replay and compare") {
  std::mt19937_64 rng(31);
  int solved_bfs = 0;
  for (int i = 0; i < 40; ++i) {
    RlStart st = sample_rl_start(rng);
    auto bf = best_first_simplify(st.expr, 10);
    CHECK(replay(st.expr, bf.path) == bf.final);
    CHECK(bf.solved == bf.final.empty());
    // nodes are N_ids * N_terms per level
    std::size_t nodes = 0;
    DilogSum cur = st.expr;
    int level_nodes = 0;
    for (const auto& p : bf.path) {
      if (p.action != Action::Cyclic && level_nodes == 0) nodes += 3 * cur.size();
      if (p.action == Action::Cyclic) level_nodes = 0;
      cur = replay(cur, {p});
      if (p.action != Action::Cyclic) level_nodes = p.action == Action::Reflection && p.term == 0 ? 1 : 0;
    }
    CHECK(nodes <= bf.nodes_visited);
    std::mt19937_64 a(i), b(i);
    auto ra = random_agent(st.expr, 50, a);
    auto rb = random_agent(st.expr, 50, b);
    CHECK(ra.path == rb.path);
    CHECK(replay(st.expr, ra.path) == ra.final);
    if (st.expr.size() <= 4 && st.n_scrambles <= 2) {
      auto b3 = bfs_simplify(st.expr, 3);
      CHECK(replay(st.expr, b3.path) == b3.final);
      if (b3.solved) {
        ++solved_bfs;
        if (bf.solved) CHECK(bf.depth >= b3.depth);
      }
    }
  }
  CHECK(solved_bfs > 0);
}

TEST_CASE("action names") {
  for (Action a : kActions) CHECK(action_from_name(action_name(a)) == a);
  CHECK(static_cast<int>(Action::Cyclic) == 3);
  CHECK_THROWS_AS(action_from_name("swap"), Error);
  CHECK(*identity_of(Action::Duplication) == Identity::Duplication);
  CHECK_FALSE(identity_of(Action::Cyclic));
}
