#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "polylog/identities.hpp"

namespace polylog {

// Wire ids: reflection 0, inversion 1, duplication 2, cyclic 3; -1 is "no previous action".
enum class Action : std::int8_t { Reflection = 0, Inversion = 1, Duplication = 2, Cyclic = 3 };

inline constexpr Action kActions[] = {Action::Reflection, Action::Inversion, Action::Duplication, Action::Cyclic};
inline constexpr int kNoAction = -1;

std::string_view action_name(Action a);
Action action_from_name(std::string_view name);  // throws InvalidArgument
Action action_of(Identity k);
std::optional<Identity> identity_of(Action a);

struct PathStep {
  Action action;
  std::size_t term = 0;
  friend bool operator==(const PathStep& a, const PathStep& b) { return a.action == b.action && a.term == b.term; }
};

struct SearchOutcome {
  DilogSum final;
  std::vector<PathStep> path;
  std::size_t nodes_visited = 0;  // every generated child, duplicates included
  std::size_t unique_nodes = 0;   // distinct states (BFS only; equals nodes_visited elsewhere)
  int depth = 0;                  // identity applications on the path; cyclic moves are free
  bool solved = false;
};

// Applies one step; oversized results (more than max_tokens) come back as nullopt.
std::optional<DilogSum> apply_step(const DilogSum& s, const PathStep& step, std::size_t max_tokens = kMaxExprTokens);
DilogSum replay(const DilogSum& start, const std::vector<PathStep>& path);

// Throws NodeBudgetExceeded once more than node_budget distinct states are stored.
SearchOutcome bfs_simplify(const DilogSum& s, int max_depth, std::size_t node_budget = 2'000'000);
SearchOutcome best_first_simplify(const DilogSum& s, int max_depth);
// Uniform actions on the first term, as in the environment.
SearchOutcome random_agent(const DilogSum& s, int max_steps, std::mt19937_64& rng);

}  // namespace polylog
