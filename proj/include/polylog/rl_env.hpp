#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polylog/search.hpp"

namespace polylog {

struct RewardConfig {
  enum class Scheme { Base, CyclicPenalty };
  Scheme scheme = Scheme::Base;
  Rational lambda_r{1, 4};
};

struct EnvState {
  DilogSum expr;
  int step = 0;
  int last_action = kNoAction;
  int last_n_dilogs = 0;
  int min_n_dilogs = 0;
};

struct Observation {
  TokenSeq tokens;
  std::vector<std::pair<int, int>> edges;
  std::array<int, 3> extras{};  // last action, previous dilog count, historical minimum

  // Row-major L_max x 20, padding rows zero.
  std::vector<std::uint8_t> one_hot(std::size_t rows = kMaxExprTokens) const;
};

struct StepResult {
  Observation obs;
  Rational reward;
  bool done = false;
  bool invalid = false;  // result exceeded the token budget; state left unchanged
};

class Environment {
 public:
  explicit Environment(RewardConfig reward = {}, int n_steps = 50, std::size_t max_tokens = kMaxExprTokens);

  Observation reset(const DilogSum& start);  // throws TokenBudgetExceeded
  StepResult step(Action a);                 // throws EpisodeFinished
  Observation observe() const;

  const EnvState& state() const { return state_; }
  const RewardConfig& reward_config() const { return reward_; }
  bool done() const;

 private:
  RewardConfig reward_;
  int n_steps_;
  std::size_t max_tokens_;
  EnvState state_;
  bool started_ = false;
};

// Reward for a transition given only the previous extras, the action and the new count.
Rational transition_reward(const RewardConfig& cfg, const std::array<int, 3>& prev_extras, Action a, int new_n);

// JSON-lines front end; sessions are independent and may be driven from several connections.
class ProtocolServer {
 public:
  nlohmann::json handle(const nlohmann::json& request);
  std::string handle_line(const std::string& line);
  void serve(std::istream& in, std::ostream& out);
  // Listens on a Unix socket path until *stop becomes true.
  void serve_socket(const std::string& path, const std::atomic<bool>* stop = nullptr);

 private:
  struct Session {
    explicit Session(Environment e) : env(std::move(e)) {}
    std::mutex mu;
    Environment env;
  };
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

nlohmann::json observation_json(const Observation& obs);
std::string rational_text(const Rational& r);
Rational parse_rational_text(const std::string& s);  // throws InvalidArgument

}  // namespace polylog
