#include "polylog/rl_env.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include "polylog/dataset.hpp"
#include "polylog/error.hpp"

namespace polylog {

std::vector<std::uint8_t> Observation::one_hot(std::size_t rows) const {
  if (tokens.size() > rows) throw Error(ErrorKind::TokenBudgetExceeded, "observation longer than the matrix");
  std::vector<std::uint8_t> m(rows * kVocabSize, 0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto t = static_cast<std::size_t>(tokens[i]);
    if (t >= static_cast<std::size_t>(kVocabSize)) throw Error(ErrorKind::UnknownToken, "token outside the expression vocabulary");
    m[i * kVocabSize + t] = 1;
  }
  return m;
}

Environment::Environment(RewardConfig reward, int n_steps, std::size_t max_tokens)
    : reward_(std::move(reward)), n_steps_(n_steps), max_tokens_(max_tokens) {
  if (reward_.lambda_r < 0) throw Error(ErrorKind::InvalidArgument, "lambda_r must be non-negative");
  if (n_steps_ <= 0) throw Error(ErrorKind::InvalidArgument, "n_steps must be positive");
}

Observation Environment::reset(const DilogSum& start) {
  if (start.tokens().size() > max_tokens_) throw Error(ErrorKind::TokenBudgetExceeded, "start expression too long");
  state_ = EnvState{};
  state_.expr = start;
  state_.last_n_dilogs = state_.min_n_dilogs = static_cast<int>(start.size());
  started_ = true;
  return observe();
}

bool Environment::done() const {
  return !started_ || state_.expr.empty() || state_.step >= n_steps_;
}

Observation Environment::observe() const {
  Observation o;
  o.tokens = state_.expr.tokens();
  if (o.tokens.size() > max_tokens_) throw Error(ErrorKind::TokenBudgetExceeded, "state too long");
  o.edges = prefix_edges(o.tokens);
  o.extras = {state_.last_action, state_.last_n_dilogs, state_.min_n_dilogs};
  return o;
}

Rational transition_reward(const RewardConfig& cfg, const std::array<int, 3>& prev, Action a, int new_n) {
  Rational r = new_n < prev[2] ? 1 : 0;
  if (cfg.scheme == RewardConfig::Scheme::CyclicPenalty && static_cast<int>(a) == prev[0] && prev[1] <= new_n)
    r -= cfg.lambda_r;
  return r;
}

StepResult Environment::step(Action a) {
  if (done()) throw Error(ErrorKind::EpisodeFinished, "episode is over");
  StepResult res;
  std::optional<DilogSum> next = apply_step(state_.expr, PathStep{a, 0}, max_tokens_);
  ++state_.step;
  if (!next) {
    res.invalid = true;
    res.reward = 0;
  } else {
    int n = static_cast<int>(next->size());
    res.reward = transition_reward(reward_, {state_.last_action, state_.last_n_dilogs, state_.min_n_dilogs}, a, n);
    state_.expr = std::move(*next);
    state_.last_action = static_cast<int>(a);
    state_.last_n_dilogs = n;
    state_.min_n_dilogs = std::min(state_.min_n_dilogs, n);
  }
  res.obs = observe();
  res.done = done();
  return res;
}

std::string rational_text(const Rational& r) { return r.get_str(); }

Rational parse_rational_text(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorKind::InvalidArgument, "not a rational: " + s);
  r.canonicalize();
  return r;
}

nlohmann::json observation_json(const Observation& obs) {
  nlohmann::json toks = nlohmann::json::array(), edges = nlohmann::json::array();
  for (Token t : obs.tokens) toks.push_back(std::string(token_text(t)));
  for (auto [p, c] : obs.edges) edges.push_back({p, c});
  nlohmann::json extras = nlohmann::json::array();
  for (int v : obs.extras) extras.push_back(std::to_string(v));
  return {{"tokens", toks}, {"edges", edges}, {"extras", extras}};
}

namespace {

nlohmann::json error_reply(ErrorKind kind, const std::string& message) {
  return {{"ok", false}, {"error", std::string(to_string(kind))}, {"message", message}};
}

std::string string_field(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) throw Error(ErrorKind::ProtocolError, std::string("missing string field ") + name);
  return it->get<std::string>();
}

}  // namespace

nlohmann::json ProtocolServer::handle(const nlohmann::json& req) {
  try {
    if (!req.is_object()) throw Error(ErrorKind::ProtocolError, "frame is not an object");
    std::string cmd = string_field(req, "cmd");
    std::string id = string_field(req, "session");
    if (cmd == "reset") {
      RewardConfig rc;
      if (req.contains("reward_scheme")) {
        std::string s = string_field(req, "reward_scheme");
        if (s == "cyclic_penalty") rc.scheme = RewardConfig::Scheme::CyclicPenalty;
        else if (s != "base") throw Error(ErrorKind::ProtocolError, "unknown reward scheme " + s);
      }
      if (req.contains("lambda_r")) rc.lambda_r = parse_rational_text(string_field(req, "lambda_r"));
      DilogSum start;
      if (req.contains("expr")) {
        start = DilogSum::from_expr(parse_prefix(tokenize(string_field(req, "expr"))));
      } else {
        std::uint64_t seed = 0;
        if (req.contains("seed")) {
          if (!req["seed"].is_number_integer()) throw Error(ErrorKind::ProtocolError, "seed must be an integer");
          seed = req["seed"].get<std::uint64_t>();
        }
        std::mt19937_64 rng(seed);
        start = sample_rl_start(rng).expr;
      }
      auto session = std::make_shared<Session>(Environment(rc));
      Observation obs = session->env.reset(start);
      {
        std::lock_guard lock(mu_);
        sessions_[id] = session;
      }
      return {{"ok", true}, {"obs", observation_json(obs)}, {"done", session->env.done()}};
    }
    std::shared_ptr<Session> session;
    {
      std::lock_guard lock(mu_);
      auto it = sessions_.find(id);
      if (it == sessions_.end()) throw Error(ErrorKind::ProtocolError, "unknown session " + id);
      session = it->second;
      if (cmd == "close") {
        sessions_.erase(it);
        return {{"ok", true}};
      }
    }
    if (cmd != "step") throw Error(ErrorKind::ProtocolError, "unknown cmd " + cmd);
    Action a;
    try {
      a = action_from_name(string_field(req, "action"));
    } catch (const Error& e) {
      throw Error(ErrorKind::ProtocolError, e.what());
    }
    std::lock_guard lock(session->mu);
    StepResult r = session->env.step(a);
    nlohmann::json reply = {{"ok", true}, {"obs", observation_json(r.obs)}, {"reward", rational_text(r.reward)},
                            {"done", r.done}};
    if (r.invalid) reply["info"] = {{"invalid", true}};
    return reply;
  } catch (const Error& e) {
    return error_reply(e.kind(), e.what());
  }
}

std::string ProtocolServer::handle_line(const std::string& line) {
  nlohmann::json req = nlohmann::json::parse(line, nullptr, false);
  if (req.is_discarded()) return error_reply(ErrorKind::ProtocolError, "malformed JSON").dump();
  return handle(req).dump();
}

void ProtocolServer::serve(std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << handle_line(line) << '\n';
    out.flush();
  }
}

void ProtocolServer::serve_socket(const std::string& path, const std::atomic<bool>* stop) {
  sockaddr_un addr{};
  if (path.size() >= sizeof(addr.sun_path)) throw Error(ErrorKind::InvalidArgument, "socket path too long");
  int fd = ::socket(AF_UNIX, SOCK_STREAM, 0);
  if (fd < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  addr.sun_family = AF_UNIX;
  std::strncpy(addr.sun_path, path.c_str(), sizeof(addr.sun_path) - 1);
  ::unlink(path.c_str());
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 || ::listen(fd, 16) < 0) {
    int err = errno;
    ::close(fd);
    throw std::runtime_error(std::string("bind: ") + std::strerror(err));
  }
  std::vector<std::thread> workers;
  while (!stop || !stop->load()) {
    pollfd p{fd, POLLIN, 0};
    if (::poll(&p, 1, 100) <= 0) continue;
    int conn = ::accept(fd, nullptr, nullptr);
    if (conn < 0) continue;
    workers.emplace_back([this, conn, stop] {
      std::string buf;
      char chunk[4096];
      while (!stop || !stop->load()) {
        pollfd cp{conn, POLLIN, 0};
        if (::poll(&cp, 1, 100) <= 0) continue;
        ssize_t n = ::read(conn, chunk, sizeof(chunk));
        if (n <= 0) break;
        buf.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        while ((nl = buf.find('\n')) != std::string::npos) {
          std::string line = buf.substr(0, nl);
          buf.erase(0, nl + 1);
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          std::string reply = handle_line(line) + "\n";
          for (std::size_t off = 0; off < reply.size();) {
            ssize_t w = ::write(conn, reply.data() + off, reply.size() - off);
            if (w <= 0) break;
            off += static_cast<std::size_t>(w);
          }
        }
      }
      ::close(conn);
    });
  }
  for (auto& w : workers) w.join();
  ::close(fd);
  ::unlink(path.c_str());
}

}  // namespace polylog
