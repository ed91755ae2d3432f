// polylog: command-line front end.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "polylog/dataset.hpp"
#include "polylog/error.hpp"
#include "polylog/infix.hpp"
#include "polylog/integrator.hpp"
#include "polylog/parallel.hpp"
#include "polylog/rl_env.hpp"
#include "polylog/search.hpp"

using namespace polylog;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::istringstream in(read_all(path));
  for (std::string line; std::getline(in, line);)
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  return lines;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string input_text(const std::string& positional, const std::string& path) {
  if (!positional.empty()) return positional;
  if (!path.empty()) {
    std::string s = read_all(path);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
  }
  throw UsageError("no input given");
}

std::string path_text(const std::vector<PathStep>& path) {
  std::string s;
  for (const auto& p : path) {
    if (!s.empty()) s += ' ';
    s += action_name(p.action);
    if (p.action != Action::Cyclic) s += "@" + std::to_string(p.term);
  }
  return s;
}

json outcome_json(const SearchOutcome& o) {
  json path = json::array();
  for (const auto& p : o.path) path.push_back({{"action", std::string(action_name(p.action))}, {"term", p.term}});
  return {{"solved", o.solved},       {"depth", o.depth},
          {"nodes_visited", o.nodes_visited}, {"unique_nodes", o.unique_nodes},
          {"path", path},             {"final", o.final.str()},
          {"final_tokens", join(o.final.tokens())}};
}

// --- simplify ---
struct SimplifyOpts {
  std::string expr, input, output = "-", algo = "best-first";
  int max_depth = 10;
  std::size_t budget = 2'000'000;
  std::uint64_t seed = 0;
  bool json = false;
};

SearchOutcome run_search(const SimplifyOpts& o, const DilogSum& s, std::uint64_t seed) {
  if (o.algo == "bfs") return bfs_simplify(s, o.max_depth, o.budget);
  if (o.algo == "best-first") return best_first_simplify(s, o.max_depth);
  std::mt19937_64 rng(seed);
  return random_agent(s, o.max_depth, rng);
}

int cmd_simplify(const SimplifyOpts& o) {
  if (o.algo != "bfs" && o.algo != "best-first" && o.algo != "random") throw UsageError("unknown --algo " + o.algo);
  if (o.max_depth < 0) throw UsageError("--max-depth must be non-negative");
  if (o.budget == 0) throw UsageError("--budget must be positive");
  Output out(o.output);
  if (o.expr.empty() && !o.input.empty()) {
    // batch mode: one expression per line, JSON lines out
    auto lines = read_lines(o.input);
    std::vector<DilogSum> starts;
    for (const auto& l : lines) starts.push_back(DilogSum::from_expr(parse_expression(l)));
    std::vector<json> rows(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) { rows[i] = outcome_json(run_search(o, starts[i], o.seed + i)); });
    for (const auto& r : rows) out.stream() << r.dump() << '\n';
    return 0;
  }
  DilogSum s = DilogSum::from_expr(parse_expression(input_text(o.expr, o.input)));
  SearchOutcome r = run_search(o, s, o.seed);
  if (o.json) {
    out.stream() << outcome_json(r).dump() << '\n';
  } else {
    out.stream() << "solved: " << (r.solved ? "true" : "false") << "\ndepth: " << r.depth
                 << "\nnodes visited: " << r.nodes_visited << "\npath: " << path_text(r.path)
                 << "\nfinal: " << r.final.str() << '\n';
  }
  return 0;
}

// --- symbol ---
Symbol symbol_text_of(const std::string& text) {
  Graded g = parse_graded(text);
  return g.weight == 0 ? Symbol() : g.symbol;
}

int cmd_symbol(const std::string& text, bool as_json) {
  Symbol s = symbol_text_of(text);
  std::optional<int> w = s.weight();
  if (as_json) {
    json j = {{"symbol", s.str()}, {"tokens", join(s.tokens())}, {"weight", w ? json(*w) : json(nullptr)}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << s.str() << '\n' << join(s.tokens()) << '\n';
  }
  return 0;
}

// --- integrate ---
int cmd_integrate(const std::string& text, int weight, bool allow_sub, bool as_json) {
  if (weight != 2) throw UsageError("only weight 2 symbols can be integrated (higher weights are not supported)");
  Symbol s = expand_product_rule(parse_symbol(text));
  if (auto w = s.weight(); w && *w != 2) throw UsageError("input symbol has weight " + std::to_string(*w));
  IntegrationOptions opts;
  opts.allow_substitution = allow_sub;
  IntegrationResult r = integrate_weight2(s, opts);
  if (as_json) {
    json j = {{"function", r.function.str()},
              {"function_tokens", join(to_prefix(r.function))},
              {"residual", r.residual.str()},
              {"integrated", r.residual.terms().empty()},
              {"trace", r.trace}};
    if (r.substitution) j["substitution"] = Expr::from_rational_func(*r.substitution).str();
    if (r.function_substituted) j["function_substituted"] = r.function_substituted->str();
    std::cout << j.dump() << '\n';
  } else {
    for (const auto& t : r.trace) std::cout << "# " << t << '\n';
    std::cout << "function: " << r.function.str() << "\nresidual: " << r.residual.str() << '\n';
    if (r.substitution) {
      std::cout << "substitution: z = " << Expr::from_rational_func(*r.substitution).str() << '\n';
      std::cout << "function(z): " << r.function_substituted->str() << '\n';
    }
  }
  return 0;
}

// --- scramble ---
int cmd_scramble(const std::string& text, const std::string& schedule, int moves, std::uint64_t seed, bool as_json) {
  DilogSum s = DilogSum::from_expr(parse_expression(text));
  std::vector<ScrambleStep> steps;
  if (!schedule.empty()) {
    std::stringstream ss(schedule);
    for (std::string item; std::getline(ss, item, ',');) {
      auto at = item.find('@');
      std::string name = item.substr(0, at);
      std::size_t term = 0;
      if (at != std::string::npos) {
        try {
          term = std::stoul(item.substr(at + 1));
        } catch (const std::exception&) {
          throw UsageError("bad term index in " + item);
        }
      }
      steps.push_back({term, identity_from_name(name)});
    }
  } else {
    if (moves < 0) throw UsageError("--moves must be non-negative");
    std::mt19937_64 rng(seed);
    // random schedule; rejected draws (repeated identity on a term) are redrawn
    DilogSum cur = s;
    for (int i = 0; i < moves && !cur.empty();) {
      bool placed = false;
      for (int tries = 0; tries < 100 && !placed; ++tries) {
        ScrambleStep st{rng() % cur.size(), kIdentities[rng() % 3]};
        auto trial = steps;
        trial.push_back(st);
        try {
          cur = scramble(s, trial);
          steps = std::move(trial);
          placed = true;
        } catch (const Error&) {
        }
      }
      if (!placed) break;
      ++i;
    }
  }
  DilogSum r = scramble(s, steps);
  if (as_json) {
    json sched = json::array();
    for (const auto& st : steps) sched.push_back({{"identity", std::string(identity_name(st.identity))}, {"term", st.term}});
    std::cout << json{{"result", r.str()}, {"tokens", join(r.tokens())}, {"schedule", sched}}.dump() << '\n';
  } else {
    std::cout << r.str() << '\n' << join(r.tokens()) << '\n';
  }
  return 0;
}

// --- generate ---
struct GenerateOpts {
  std::string task = "dilog_pairs", output = "-";
  GenConfig cfg;
  double test_fraction = 0;
};

void write_jsonl(const std::string& path, const std::vector<DatasetRecord>& recs) {
  Output out(path);
  for (const auto& r : recs) out.stream() << to_json(r).dump() << '\n';
}

int cmd_generate(GenerateOpts o) {
  o.cfg.task = task_from_name(o.task);
  if (o.cfg.count == 0) throw UsageError("--count must be positive");
  if (o.cfg.weight < 2 || o.cfg.weight > 4) throw UsageError("--weight must be 2, 3 or 4");
  if (o.test_fraction < 0 || o.test_fraction >= 1) throw UsageError("--test-fraction must be in [0, 1)");
  if (o.test_fraction > 0 && o.output == "-") throw UsageError("a split needs a file --output");
  GenStats stats;
  auto recs = generate(o.cfg, &stats);
  json manifest = {{"task", o.task},
                   {"weight", o.cfg.weight},
                   {"count", o.cfg.count},
                   {"seed", o.cfg.seed},
                   {"variants_per_family", o.cfg.variants_per_family},
                   {"scramble_symbols", o.cfg.scramble_symbols},
                   {"emitted", stats.emitted},
                   {"oracle_pass", stats.verified}};
  if (o.test_fraction > 0) {
    std::mt19937_64 rng(o.cfg.seed ^ 0x5eedULL);
    Split sp = split_with_containment(recs, o.test_fraction, rng);
    std::string stem = o.output;
    if (stem.size() > 6 && stem.ends_with(".jsonl")) stem.resize(stem.size() - 6);
    write_jsonl(stem + ".train.jsonl", sp.train);
    write_jsonl(stem + ".test.jsonl", sp.test);
    manifest["train"] = sp.train.size();
    manifest["test"] = sp.test.size();
    manifest["test_unique_after_masking"] = leakage_report(sp.train, sp.test);
    std::ofstream(stem + ".manifest.json") << manifest.dump(2) << '\n';
  } else {
    write_jsonl(o.output, recs);
    if (o.output != "-") std::ofstream(o.output + ".manifest.json") << manifest.dump(2) << '\n';
  }
  std::cerr << "generated " << stats.emitted << " records, " << stats.verified << " verified\n";
  return 0;
}

// --- check ---
int cmd_check(const std::string& pred, const std::string& truth, bool as_json) {
  Symbol sa = symbol_text_of(pred), sb = symbol_text_of(truth);
  std::optional<int> w = sa.weight() ? sa.weight() : sb.weight();
  Symbol diff;
  if (!w || *w == 2) {
    Symbol d = sa;
    for (const auto& [word, c] : sb.terms()) d.add(word, -c);
    diff = d.terms().empty() ? d : antisymmetric_part(d);
  } else {
    diff = sa;
    for (const auto& [word, c] : sb.terms()) diff.add(word, -c);
  }
  bool eq = diff.terms().empty();
  if (as_json) {
    std::cout << json{{"equivalent", eq}, {"difference", diff.str()}}.dump() << '\n';
  } else {
    std::cout << (eq ? "true" : "false") << '\n';
    if (!eq) std::cout << "difference: " << diff.str() << '\n';
  }
  return 0;
}

// --- score ---
std::string prediction_of(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) return line;
  if (j.is_string()) return j.get<std::string>();
  for (const char* k : {"prediction", "output"})
    if (j.is_object() && j.contains(k) && j[k].is_string()) return j[k].get<std::string>();
  throw UsageError("prediction line has no prediction/output field");
}

std::size_t top_level_terms(const Expr& e) {
  if (e.kind() == Expr::Kind::Add) return e.children().size();
  return e.is_constant() && e.value() == 0 ? 0 : 1;
}

int cmd_score(const std::string& dataset, const std::string& predictions, bool as_json) {
  auto truth_lines = read_lines(dataset);
  auto pred_lines = read_lines(predictions);
  if (truth_lines.size() != pred_lines.size())
    throw UsageError("dataset has " + std::to_string(truth_lines.size()) + " lines, predictions " +
                     std::to_string(pred_lines.size()));
  std::size_t n = truth_lines.size();
  std::vector<DatasetRecord> truth(n);
  std::vector<std::string> preds(n);
  for (std::size_t i = 0; i < n; ++i) {
    json j = json::parse(truth_lines[i], nullptr, false);
    if (j.is_discarded()) throw UsageError("dataset line " + std::to_string(i + 1) + " is not JSON");
    truth[i] = record_from_json(j);
    preds[i] = prediction_of(pred_lines[i]);
  }
  std::vector<char> exact(n), equiv(n), count_match(n);
  parallel_for(n, [&](std::size_t i) {
    const DatasetRecord& r = truth[i];
    exact[i] = preds[i] == r.output;
    try {
      Expr p = parse_prefix(tokenize(preds[i]));
      Expr t = parse_prefix(tokenize(r.output));
      count_match[i] = top_level_terms(p) == top_level_terms(t);
      if (r.task == Task::SymbolPairs)
        equiv[i] = symbol_of(p) == expand_product_rule(parse_symbol_prefix(tokenize(r.input)));
      else
        equiv[i] = equivalent_mod_symmetric(p, t);
    } catch (const Error&) {
      // unparseable or ill-typed predictions score zero
    }
  });
  auto frac = [n](const std::vector<char>& v) {
    return n == 0 ? 0.0 : static_cast<double>(std::count(v.begin(), v.end(), 1)) / static_cast<double>(n);
  };
  json rep = {{"records", n},
              {"exact_match", frac(exact)},
              {"symbol_equivalent", frac(equiv)},
              {"term_count_match", frac(count_match)}};
  if (as_json) {
    std::cout << rep.dump() << '\n';
  } else {
    std::cout << "records: " << n << "\nexact match: " << frac(exact) << "\nsymbol equivalent: " << frac(equiv)
              << "\nterm count match: " << frac(count_match) << '\n';
  }
  return 0;
}

bool user_error(ErrorKind k) { return k != ErrorKind::ExhaustedRetries; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical polylogarithm simplification, symbols and datasets"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  SimplifyOpts so;
  auto* simplify = app.add_subcommand("simplify", "Simplify a sum of dilogarithms");
  simplify->add_option("expr", so.expr, "Expression (prefix tokens or infix)");
  simplify->add_option("--input", so.input, "File with one expression per line ('-' for stdin)");
  simplify->add_option("--output", so.output, "Output path ('-' for stdout)");
  simplify->add_option("--algo", so.algo, "bfs, best-first or random")->check(CLI::IsMember({"bfs", "best-first", "random"}));
  simplify->add_option("--max-depth", so.max_depth, "Depth, or steps for random");
  simplify->add_option("--budget", so.budget, "BFS node budget");
  simplify->add_option("--seed", so.seed, "Random agent seed");
  simplify->add_flag("--json", so.json);

  std::string text, path, text2;
  auto* symbol = app.add_subcommand("symbol", "Symbol of a function");
  symbol->add_option("expr", text, "Expression");
  symbol->add_option("--input", path, "Read the expression from a file");
  symbol->add_flag("--json", as_json);

  int weight = 2;
  bool allow_sub = false;
  auto* integrate = app.add_subcommand("integrate", "Integrate a weight-2 symbol");
  integrate->add_option("symbol", text, "Symbol text or prefix tokens");
  integrate->add_option("--input", path, "Read the symbol from a file");
  integrate->add_option("--weight", weight, "Symbol weight (only 2 is supported)");
  integrate->add_flag("--allow-substitution", allow_sub, "Try z=(1-y)/(1+y) style substitutions");
  integrate->add_flag("--json", as_json);

  std::string schedule;
  int moves = 3;
  std::uint64_t seed = 0;
  auto* scr = app.add_subcommand("scramble", "Apply identities to a dilogarithm sum");
  scr->add_option("expr", text, "Expression");
  scr->add_option("--schedule", schedule, "Comma separated identity@term, e.g. duplication@0,inversion@1");
  scr->add_option("--moves", moves, "Random moves when no schedule is given");
  scr->add_option("--seed", seed);
  scr->add_flag("--json", as_json);

  GenerateOpts go;
  auto* gen = app.add_subcommand("generate", "Generate a verified dataset as JSON lines");
  gen->add_option("--task", go.task, "rl_start, dilog_pairs or symbol_pairs")
      ->check(CLI::IsMember({"rl_start", "dilog_pairs", "symbol_pairs"}));
  gen->add_option("--count", go.cfg.count);
  gen->add_option("--seed", go.cfg.seed);
  gen->add_option("--weight", go.cfg.weight, "Symbol pair weight (2-4)");
  gen->add_option("--variants", go.cfg.variants_per_family, "Scrambles per unscrambled target");
  gen->add_flag("--scramble-symbols", go.cfg.scramble_symbols);
  gen->add_option("--test-fraction", go.test_fraction, "Write a containment-respecting train/test split");
  gen->add_option("--output", go.output, "Output path ('-' for stdout)");

  bool stdio = false;
  std::string socket_path;
  auto* serve = app.add_subcommand("serve", "Run the environment over JSON lines");
  serve->add_flag("--serve-stdio", stdio, "Use standard input and output (default)");
  serve->add_option("--socket", socket_path, "Listen on a Unix socket instead");

  auto* check = app.add_subcommand("check", "Compare two functions by their symbols");
  check->add_option("pred", text, "Candidate")->required();
  check->add_option("truth", text2, "Reference")->required();
  check->add_flag("--json", as_json);

  std::string dataset, preds;
  auto* score = app.add_subcommand("score", "Score predictions against a dataset");
  score->add_option("--input,dataset", dataset, "Dataset JSONL")->required();
  score->add_option("--predictions,predictions", preds, "Predictions JSONL, line aligned")->required();
  score->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simplify) return cmd_simplify(so);
    if (*symbol) return cmd_symbol(input_text(text, path), as_json);
    if (*integrate) return cmd_integrate(input_text(text, path), weight, allow_sub, as_json);
    if (*scr) return cmd_scramble(input_text(text, ""), schedule, moves, seed, as_json);
    if (*gen) return cmd_generate(go);
    if (*serve) {
      ProtocolServer srv;
      if (!socket_path.empty())
        srv.serve_socket(socket_path);
      else
        srv.serve(std::cin, std::cout);
      return 0;
    }
    if (*check) return cmd_check(text, text2, as_json);
    if (*score) return cmd_score(dataset, preds, as_json);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return user_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
