#include "polylog/search.hpp"

#include <deque>
#include <unordered_map>

#include "polylog/error.hpp"

namespace polylog {

std::string_view action_name(Action a) {
  switch (a) {
    case Action::Reflection: return "reflection";
    case Action::Inversion: return "inversion";
    case Action::Duplication: return "duplication";
    case Action::Cyclic: return "cyclic";
  }
  return "?";
}

Action action_from_name(std::string_view name) {
  for (Action a : kActions)
    if (action_name(a) == name) return a;
  throw Error(ErrorKind::InvalidArgument, "unknown action '" + std::string(name) + "'");
}

Action action_of(Identity k) { return static_cast<Action>(static_cast<int>(k)); }

std::optional<Identity> identity_of(Action a) {
  if (a == Action::Cyclic) return std::nullopt;
  return static_cast<Identity>(static_cast<int>(a));
}

std::optional<DilogSum> apply_step(const DilogSum& s, const PathStep& step, std::size_t max_tokens) {
  auto k = identity_of(step.action);
  if (!k) return cyclic_permute(s);
  if (s.empty()) return s;
  if (step.term >= s.size()) throw Error(ErrorKind::InvalidArgument, "term index out of range");
  DilogSum out = apply_identity_at(s, step.term, *k);
  if (out.tokens().size() > max_tokens) return std::nullopt;
  return out;
}

DilogSum replay(const DilogSum& start, const std::vector<PathStep>& path) {
  DilogSum cur = start;
  for (const auto& p : path) {
    auto next = apply_step(cur, p, SIZE_MAX);
    cur = std::move(*next);
  }
  return cur;
}

namespace {

struct Node {
  DilogSum expr;
  std::size_t parent;
  PathStep step;
  int depth;
};

std::vector<PathStep> trace_back(const std::vector<Node>& nodes, std::size_t i) {
  std::vector<PathStep> path;
  while (i != 0) {
    path.push_back(nodes[i].step);
    i = nodes[i].parent;
  }
  return {path.rbegin(), path.rend()};
}

}  // namespace

SearchOutcome bfs_simplify(const DilogSum& s, int max_depth, std::size_t node_budget) {
  if (max_depth < 0) throw Error(ErrorKind::InvalidArgument, "max_depth must be non-negative");
  std::vector<Node> nodes{{s, 0, {Action::Cyclic, 0}, 0}};
  std::unordered_map<std::string, std::size_t> seen{{s.key(), 0}};
  std::size_t best = 0, raw = 0;
  auto better = [&](std::size_t a, std::size_t b) {
    const auto& x = nodes[a].expr;
    const auto& y = nodes[b].expr;
    if (x.size() != y.size()) return x.size() < y.size();
    return false;  // earlier (shallower) node wins
  };
  std::optional<std::size_t> solution = s.empty() ? std::optional<std::size_t>(0) : std::nullopt;
  std::deque<std::size_t> frontier{0};
  while (!solution && !frontier.empty()) {
    std::size_t i = frontier.front();
    frontier.pop_front();
    if (nodes[i].depth >= max_depth) continue;
    for (std::size_t t = 0; t < nodes[i].expr.size() && !solution; ++t)
      for (Identity k : kIdentities) {
        PathStep step{action_of(k), t};
        ++raw;
        auto child = apply_step(nodes[i].expr, step);
        if (!child) continue;
        auto [it, fresh] = seen.emplace(child->key(), nodes.size());
        if (!fresh) continue;
        if (nodes.size() >= node_budget)
          throw Error(ErrorKind::NodeBudgetExceeded, "bfs stored " + std::to_string(nodes.size()) + " states");
        nodes.push_back({std::move(*child), i, step, nodes[i].depth + 1});
        std::size_t j = nodes.size() - 1;
        if (better(j, best)) best = j;
        if (nodes[j].expr.empty()) {
          solution = j;
          break;
        }
        frontier.push_back(j);
      }
  }
  std::size_t pick = solution ? *solution : best;
  SearchOutcome out;
  out.final = nodes[pick].expr;
  out.path = trace_back(nodes, pick);
  out.depth = nodes[pick].depth;
  out.nodes_visited = raw;
  out.unique_nodes = nodes.size() - 1;
  out.solved = out.final.empty();
  return out;
}

SearchOutcome best_first_simplify(const DilogSum& s, int max_depth) {
  if (max_depth < 0) throw Error(ErrorKind::InvalidArgument, "max_depth must be non-negative");
  SearchOutcome out;
  DilogSum cur = s;
  while (!cur.empty() && out.depth < max_depth) {
    std::optional<DilogSum> best;
    std::optional<PathStep> best_step;
    std::string best_key;
    for (std::size_t t = 0; t < cur.size(); ++t)
      for (Identity k : kIdentities) {
        PathStep step{action_of(k), t};
        ++out.nodes_visited;
        auto child = apply_step(cur, step);
        if (!child || child->size() >= cur.size()) continue;
        std::string key = child->key();
        if (!best || child->size() < best->size() || (child->size() == best->size() && key < best_key)) {
          best = std::move(child);
          best_step = step;
          best_key = std::move(key);
        }
      }
    ++out.depth;
    if (best) {
      cur = std::move(*best);
      out.path.push_back(*best_step);
      continue;
    }
    // tie: reflection on the first term, then rotate the terms
    PathStep refl{Action::Reflection, 0};
    if (auto r = apply_step(cur, refl)) {
      cur = std::move(*r);
      out.path.push_back(refl);
    }
    if (cur.size() > 1) {
      cur = cyclic_permute(cur);
      out.path.push_back({Action::Cyclic, 0});
    }
  }
  out.final = cur;
  out.solved = cur.empty();
  out.unique_nodes = out.nodes_visited;
  return out;
}

SearchOutcome random_agent(const DilogSum& s, int max_steps, std::mt19937_64& rng) {
  SearchOutcome out;
  DilogSum cur = s;
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < max_steps && !cur.empty(); ++i) {
    PathStep step{kActions[pick(rng)], 0};
    if (step.action != Action::Cyclic) {
      ++out.nodes_visited;
      ++out.depth;
    }
    auto next = apply_step(cur, step);
    if (!next) continue;
    cur = std::move(*next);
    out.path.push_back(step);
  }
  out.final = cur;
  out.solved = cur.empty();
  out.unique_nodes = out.nodes_visited;
  return out;
}

}  // namespace polylog
