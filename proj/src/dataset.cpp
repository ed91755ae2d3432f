#include "polylog/dataset.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "polylog/error.hpp"
#include "polylog/parallel.hpp"

namespace polylog {

std::string_view task_name(Task t) {
  switch (t) {
    case Task::RlStart: return "rl_start";
    case Task::DilogPairs: return "dilog_pairs";
    case Task::SymbolPairs: return "symbol_pairs";
  }
  return "?";
}

Task task_from_name(std::string_view name) {
  for (Task t : {Task::RlStart, Task::DilogPairs, Task::SymbolPairs})
    if (task_name(t) == name) return t;
  throw Error(ErrorKind::InvalidArgument, "unknown task '" + std::string(name) + "'");
}

nlohmann::json to_json(const DatasetRecord& r) {
  return {{"id", r.id},
          {"task", task_name(r.task)},
          {"input", r.input},
          {"output", r.output},
          {"meta",
           {{"n_scrambles", r.meta.n_scrambles},
            {"n_terms", r.meta.n_terms},
            {"weight", r.meta.weight},
            {"family_id", r.meta.family_id}}}};
}

DatasetRecord record_from_json(const nlohmann::json& j) {
  DatasetRecord r;
  r.id = j.at("id").get<std::uint64_t>();
  r.task = task_from_name(j.at("task").get<std::string>());
  r.input = j.at("input").get<std::string>();
  r.output = j.at("output").get<std::string>();
  const auto& m = j.at("meta");
  r.meta.n_scrambles = m.at("n_scrambles").get<int>();
  r.meta.n_terms = m.at("n_terms").get<int>();
  r.meta.weight = m.at("weight").get<int>();
  r.meta.family_id = m.at("family_id").get<std::string>();
  return r;
}

const std::vector<RationalFunc>& argument_pool() {
  static const std::vector<RationalFunc> pool = [] {
    std::vector<Poly> polys;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c) polys.push_back(Poly({Integer(a), Integer(b), Integer(c)}));
    std::set<RationalFunc> seen;
    for (const auto& n : polys)
      for (const auto& d : polys) {
        if (d.is_zero()) continue;
        RationalFunc f(n, d);
        if (!f.is_constant()) seen.insert(f);
      }
    return std::vector<RationalFunc>(seen.begin(), seen.end());
  }();
  return pool;
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

int nonzero(std::mt19937_64& rng, int r) {
  int v = uniform(rng, -r, r - 1);
  return v >= 0 ? v + 1 : v;
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<RationalFunc> distinct_args(std::mt19937_64& rng, int n) {
  const auto& pool = argument_pool();
  std::vector<RationalFunc> out;
  while (static_cast<int>(out.size()) < n) {
    const RationalFunc& f = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

struct Tracked {
  DilogTerm term;
  int last = -1;  // identity that produced the term
};

// Applies `count` identities inside one slot, never repeating an identity on the term it produced.
void scramble_slot(std::vector<Tracked>& slot, int count, std::mt19937_64& rng) {
  for (int s = 0; s < count && !slot.empty(); ++s) {
    std::size_t i = uniform(rng, 0, static_cast<int>(slot.size()) - 1);
    std::vector<Identity> allowed;
    for (Identity k : kIdentities)
      if (static_cast<int>(k) != slot[i].last) allowed.push_back(k);
    Identity k = allowed[uniform(rng, 0, static_cast<int>(allowed.size()) - 1)];
    std::vector<Tracked> next;
    for (std::size_t j = 0; j < slot.size(); ++j) {
      if (j != i) {
        next.push_back(slot[j]);
        continue;
      }
      for (auto& t : rewrite_term(slot[j].term, k)) next.push_back({t, static_cast<int>(k)});
    }
    // merge like terms at the earliest position
    std::vector<Tracked> merged;
    for (auto& t : next) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const Tracked& m) { return m.term.arg == t.term.arg; });
      if (it == merged.end())
        merged.push_back(t);
      else
        it->term.coeff += t.term.coeff;
    }
    slot.clear();
    for (auto& m : merged)
      if (m.term.coeff != 0) slot.push_back(m);
  }
}

// Distributes n_scr identities over slots, each of the first `forced` slots getting at least one.
std::vector<int> distribute(std::mt19937_64& rng, int n_scr, int slots, int forced) {
  std::vector<int> counts(slots, 0);
  for (int i = 0; i < forced; ++i) counts[i] = 1;
  for (int r = n_scr - forced; r > 0; --r) ++counts[uniform(rng, 0, slots - 1)];
  return counts;
}

std::string join_tokens(const TokenSeq& t) { return join(t); }

// Skeleton shared by the two dilogarithm generators: kept terms g (scrambled optionally) and zeros h.
struct DilogSkeleton {
  std::vector<DilogTerm> kept;
  std::vector<DilogTerm> zeros;
  std::string family;
};

DilogSkeleton rl_skeleton(std::mt19937_64& rng) {
  DilogSkeleton sk;
  int n_t = uniform(rng, 1, 4);
  auto args = distinct_args(rng, n_t);
  for (auto& h : args) sk.zeros.push_back({uniform(rng, 1, 8), h});
  sk.family = fnv_hex("rl|" + DilogSum::from_terms(sk.zeros).key());
  return sk;
}

DilogSkeleton pair_skeleton(std::mt19937_64& rng) {
  DilogSkeleton sk;
  int n_s, n_t;
  do {
    n_s = uniform(rng, 0, 3);
    n_t = uniform(rng, 0, 3);
  } while (n_s + n_t == 0);
  auto args = distinct_args(rng, n_s + n_t);
  for (int i = 0; i < n_s; ++i) sk.kept.push_back({nonzero(rng, 8), args[i]});
  for (int j = 0; j < n_t; ++j) sk.zeros.push_back({uniform(rng, 1, 8), args[n_s + j]});
  sk.family = fnv_hex("dp|" + DilogSum::from_terms(sk.kept).key() + "|" + DilogSum::from_terms(sk.zeros).key());
  return sk;
}

// Scrambles the skeleton; nullopt when the result is empty or over budget.
std::optional<DilogSum> scramble_skeleton(const DilogSkeleton& sk, int n_scr, std::mt19937_64& rng,
                                          std::size_t max_tokens) {
  int n_t = static_cast<int>(sk.zeros.size());
  int slots = n_t + static_cast<int>(sk.kept.size());
  std::vector<int> counts = distribute(rng, n_scr, slots, n_t);
  std::vector<DilogTerm> all;
  for (int i = 0; i < slots; ++i) {
    const DilogTerm& t = i < n_t ? sk.zeros[i] : sk.kept[i - n_t];
    std::vector<Tracked> slot{{t, -1}};
    scramble_slot(slot, counts[i], rng);
    for (auto& s : slot) all.push_back(s.term);
  }
  for (auto& z : sk.zeros) all.push_back({-z.coeff, z.arg});
  std::shuffle(all.begin(), all.end(), rng);
  DilogSum out = DilogSum::from_terms(all);
  if (out.empty() || out.tokens().size() > max_tokens) return std::nullopt;
  return out;
}

std::size_t budget(const GenConfig& cfg) {
  if (cfg.max_tokens_in) return cfg.max_tokens_in;
  return cfg.task == Task::SymbolPairs ? kMaxSymbolTokens : kMaxExprTokens;
}

// Basis terms: polylog weights and the number of log slots.
struct Basis {
  std::vector<int> polylogs;
  int logs;
};

const std::vector<std::pair<Basis, double>>& basis_table(int weight) {
  static const std::vector<std::pair<Basis, double>> w2 = {{{{2}, 0}, 2.0 / 3}, {{{}, 2}, 1.0 / 3}};
  static const std::vector<std::pair<Basis, double>> w3 = {
      {{{3}, 0}, 1.0 / 2}, {{{2}, 1}, 1.0 / 3}, {{{}, 3}, 1.0 / 6}};
  static const std::vector<std::pair<Basis, double>> w4 = {{{{4}, 0}, 4.0 / 13},
                                                           {{{3}, 1}, 3.0 / 13},
                                                           {{{2, 2}, 0}, 3.0 / 13},
                                                           {{{2}, 2}, 2.0 / 13},
                                                           {{{}, 4}, 1.0 / 13}};
  switch (weight) {
    case 2: return w2;
    case 3: return w3;
    case 4: return w4;
  }
  throw Error(ErrorKind::UnsupportedWeight, "symbol pairs need weight 2, 3 or 4");
}

constexpr int kMaxArgDegree = 12;

RationalFunc sample_argument(std::mt19937_64& rng, int max_retries) {
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    try {
      RationalFunc f = canonicalize_rational(sample_argument_tree(rng));
      if (f.is_constant() || f.num().degree() > kMaxArgDegree || f.den().degree() > kMaxArgDegree) continue;
      return f;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroDenominator) throw;
    }
  }
  throw Error(ErrorKind::ExhaustedRetries, "no valid argument tree");
}

// Expanded term c * prod Li_n(f) * prod ln(p) with p irreducible.
struct FuncKey {
  std::vector<std::pair<int, RationalFunc>> polylogs;
  std::vector<Poly> logs;
  friend bool operator<(const FuncKey& a, const FuncKey& b) {
    if (a.polylogs.size() != b.polylogs.size()) return a.polylogs.size() < b.polylogs.size();
    for (std::size_t i = 0; i < a.polylogs.size(); ++i) {
      if (a.polylogs[i].first != b.polylogs[i].first) return a.polylogs[i].first > b.polylogs[i].first;
      if (a.polylogs[i].second < b.polylogs[i].second) return true;
      if (b.polylogs[i].second < a.polylogs[i].second) return false;
    }
    return a.logs < b.logs;
  }
};

Expr log_expr(const Poly& p) {
  Poly q = p;
  if (q.coeff(0) < 0) q *= Integer(-1);
  return Expr::ln(Expr::from_poly(q));
}

Expr build_function(const std::map<FuncKey, Rational>& terms) {
  std::vector<Expr> parts;
  for (const auto& [k, c] : terms) {
    if (c == 0) continue;
    std::vector<Expr> f{Expr::rational(c)};
    for (const auto& [n, a] : k.polylogs) f.push_back(Expr::li(n, Expr::from_rational_func(a)));
    for (std::size_t i = 0; i < k.logs.size();) {
      std::size_t j = i;
      while (j < k.logs.size() && k.logs[j] == k.logs[i]) ++j;
      Expr l = log_expr(k.logs[i]);
      f.push_back(j - i == 1 ? l : Expr::pow(l, static_cast<long>(j - i)));
      i = j;
    }
    parts.push_back(Expr::mul(std::move(f)));
  }
  if (parts.empty()) return Expr::integer(0);
  return Expr::add(std::move(parts));
}

struct SymbolSkeleton {
  Expr function;
  int n_terms = 0;
  std::string family;
};

SymbolSkeleton symbol_skeleton(std::mt19937_64& rng, int weight, int max_retries) {
  const auto& table = basis_table(weight);
  std::vector<double> probs;
  for (auto& [b, p] : table) probs.push_back(p);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    int n_s = uniform(rng, 1, 3);
    std::map<FuncKey, Rational> terms;
    for (int j = 0; j < n_s; ++j) {
      Rational c = sample_coefficient(rng);
      const Basis& b = table[std::discrete_distribution<int>(probs.begin(), probs.end())(rng)].first;
      bool repeat = std::bernoulli_distribution(0.5)(rng);
      std::size_t slots = b.polylogs.size() + b.logs;
      std::vector<RationalFunc> args;
      for (std::size_t s = 0; s < slots; ++s)
        args.push_back(repeat && s > 0 ? args[0] : sample_argument(rng, max_retries));
      // ln(f) -> sum e_i ln(p_i) with constants removed, then expand the product
      std::vector<std::pair<FuncKey, Rational>> expanded{{FuncKey{}, c}};
      for (std::size_t s = 0; s < b.polylogs.size(); ++s)
        for (auto& [k, v] : expanded) k.polylogs.emplace_back(b.polylogs[s], args[s]);
      for (std::size_t s = b.polylogs.size(); s < slots; ++s) {
        auto factors = entry_factors(args[s]);
        std::vector<std::pair<FuncKey, Rational>> next;
        for (auto& [k, v] : expanded)
          for (auto& [p, e] : factors) {
            FuncKey nk = k;
            nk.logs.push_back(p.poly());
            Rational nv = v * e;
            next.emplace_back(std::move(nk), std::move(nv));
          }
        expanded = std::move(next);
      }
      for (auto& [k, v] : expanded) {
        std::sort(k.polylogs.begin(), k.polylogs.end(), [](const auto& a, const auto& b) {
          return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        std::sort(k.logs.begin(), k.logs.end());
        terms[k] += v;
      }
    }
    for (auto it = terms.begin(); it != terms.end();) it = it->second == 0 ? terms.erase(it) : std::next(it);
    if (terms.empty()) continue;
    SymbolSkeleton sk;
    sk.function = build_function(terms);
    sk.n_terms = static_cast<int>(terms.size());
    sk.family = fnv_hex("sp|" + join(to_prefix(sk.function)));
    return sk;
  }
  throw Error(ErrorKind::ExhaustedRetries, "no valid symbol-pair skeleton");
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

}  // namespace

RlStart sample_rl_start(std::mt19937_64& rng, int max_retries) {
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    DilogSkeleton sk = rl_skeleton(rng);
    int n_t = static_cast<int>(sk.zeros.size());
    int n_scr = uniform(rng, n_t, n_t > 2 ? 4 : 7);
    auto s = scramble_skeleton(sk, n_scr, rng, kMaxExprTokens);
    if (s) return {std::move(*s), n_scr, n_t, sk.family};
  }
  throw Error(ErrorKind::ExhaustedRetries, "no valid RL start point");
}

Rational sample_coefficient(std::mt19937_64& rng) {
  int kind = std::discrete_distribution<int>({0.5, 0.25, 0.25})(rng);
  int a1 = nonzero(rng, 5), a2 = nonzero(rng, 5);
  Rational r = kind == 0 ? Rational(a1) : Rational(kind == 1 ? 1 : a1, a2);
  r.canonicalize();
  return r;
}

Expr sample_argument_tree(std::mt19937_64& rng, TreeStats* stats) {
  // Uniform trees over unary/binary operators (Lample & Charton); D[e][n] counts completions.
  constexpr int kMaxOps = 8;
  static const auto D = [] {
    std::array<std::array<double, kMaxOps + 1>, 2 * kMaxOps + 3> d{};
    for (std::size_t e = 0; e < d.size(); ++e) d[e][0] = e == 0 ? 0 : 1;
    for (int n = 1; n <= kMaxOps; ++n)
      for (std::size_t e = 1; e + 1 < d.size(); ++e) d[e][n] = d[e - 1][n] + d[e][n - 1] + d[e + 1][n - 1];
    return d;
  }();
  int n = uniform(rng, 0, kMaxOps);
  // prefix layout: 0 leaf, 1 unary, 2 binary
  std::vector<int> layout;
  int e = 1;
  for (; n > 0; --n) {
    std::vector<double> w;
    for (int k = 0; k < e; ++k) {
      w.push_back(D[e - k][n - 1]);
      w.push_back(D[e - k + 1][n - 1]);
    }
    int pick = std::discrete_distribution<int>(w.begin(), w.end())(rng);
    int k = pick / 2, arity = pick % 2 + 1;
    for (int i = 0; i < k; ++i) layout.push_back(0);
    layout.push_back(arity);
    e = e - k - 1 + arity;
  }
  for (int i = 0; i < e; ++i) layout.push_back(0);

  std::discrete_distribution<int> unary({0.2, 0.8}), binary({0.31, 0.31, 0.15, 0.23}), leaf({0.75, 0.25});
  std::size_t pos = 0;
  auto build = [&](auto&& self) -> Expr {
    int kind = layout[pos++];
    if (kind == 0) {
      int l = leaf(rng);
      if (stats) ++stats->leaves[l];
      return l == 0 ? Expr::var() : Expr::integer(uniform(rng, 1, 5));
    }
    if (kind == 1) {
      int op = unary(rng);
      if (stats) ++stats->unary[op];
      return Expr::pow(self(self), op + 2);
    }
    int op = binary(rng);
    if (stats) ++stats->binary[op];
    Expr a = self(self);
    Expr b = self(self);
    switch (op) {
      case 0: return Expr::add({a, b});
      case 1: return Expr::add({a, Expr::mul({Expr::integer(-1), b})});
      case 2: return Expr::mul({a, b});
      default:
        if (b.is_constant() && b.value() == 0) throw Error(ErrorKind::ZeroDenominator, "division by zero");
        return Expr::mul({a, Expr::pow(b, -1)});
    }
  };
  return build(build);
}

DatasetRecord sample_record(const GenConfig& cfg, std::uint64_t index) {
  int variants = std::max(1, cfg.variants_per_family);
  std::uint64_t family = index / variants;
  std::mt19937_64 skel_rng = seeded(cfg.seed, family, 0);
  std::mt19937_64 var_rng = seeded(cfg.seed, index, 1);
  std::mt19937_64& scr_rng = variants == 1 ? skel_rng : var_rng;
  std::size_t max_in = budget(cfg);

  DatasetRecord r;
  r.id = index;
  r.task = cfg.task;
  std::optional<DilogSkeleton> dilog;
  std::optional<SymbolSkeleton> func;
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    switch (cfg.task) {
      case Task::RlStart: {
        if (variants == 1 || !dilog) dilog = rl_skeleton(skel_rng);
        int n_t = static_cast<int>(dilog->zeros.size());
        int n_scr = uniform(scr_rng, n_t, n_t > 2 ? 4 : 7);
        auto s = scramble_skeleton(*dilog, n_scr, scr_rng, max_in);
        if (!s) continue;
        r.input = join_tokens(s->tokens());
        r.output = join_tokens(to_prefix(Expr::integer(0)));
        r.meta = {n_scr, n_t, 2, dilog->family};
        break;
      }
      case Task::DilogPairs: {
        if (variants == 1 || !dilog) dilog = pair_skeleton(skel_rng);
        int n_t = static_cast<int>(dilog->zeros.size());
        int n_scr = uniform(scr_rng, std::max(n_t, 1), 10);
        auto s = scramble_skeleton(*dilog, n_scr, scr_rng, max_in);
        if (!s) continue;
        r.input = join_tokens(s->tokens());
        r.output = join_tokens(DilogSum::from_terms(dilog->kept).tokens());
        r.meta = {n_scr, static_cast<int>(dilog->kept.size() + dilog->zeros.size()), 2, dilog->family};
        break;
      }
      case Task::SymbolPairs: {
        if (variants == 1 || !func) func = symbol_skeleton(skel_rng, cfg.weight, cfg.max_retries);
        TokenSeq out = to_prefix(func->function);
        Symbol sym;
        try {
          if (out.size() <= kMaxExprTokens) sym = symbol_of(func->function);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::PoleEncountered) throw;
        }
        if (sym.is_zero()) {
          func.reset();
          continue;
        }
        int moves = cfg.scramble_symbols ? uniform(scr_rng, 1, 5) : 0;
        TokenSeq in;
        if (moves) {
          try {
            in = symbol_scramble(to_raw(sym), moves, scr_rng, max_in).tokens();
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::TokenBudgetExceeded) throw;
            continue;
          }
        } else {
          in = sym.tokens();
        }
        if (in.size() > max_in) continue;
        r.input = join_tokens(in);
        r.output = join_tokens(out);
        r.meta = {moves, func->n_terms, cfg.weight, func->family};
        break;
      }
    }
    if (r.input.empty()) continue;
    if (!verify_record(r)) {
      r.input.clear();
      continue;
    }
    return r;
  }
  throw Error(ErrorKind::ExhaustedRetries, "record " + std::to_string(index) + " exhausted its retries");
}

bool verify_record(const DatasetRecord& r) {
  try {
    TokenSeq in = tokenize(r.input);
    TokenSeq out = tokenize(r.output);
    switch (r.task) {
      case Task::RlStart: {
        Expr e = parse_prefix(in);
        return parse_prefix(out) == Expr::integer(0) && antisymmetric_part(symbol_of(e)).is_zero();
      }
      case Task::DilogPairs:
        return equivalent_mod_symmetric(parse_prefix(in), parse_prefix(out));
      case Task::SymbolPairs:
        return expand_product_rule(parse_symbol_prefix(in)) == symbol_of(parse_prefix(out));
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

std::vector<DatasetRecord> generate(const GenConfig& cfg, GenStats* stats) {
  if (cfg.count == 0) throw Error(ErrorKind::InvalidArgument, "count must be positive");
  std::vector<DatasetRecord> out(cfg.count);
  parallel_for(cfg.count, [&](std::size_t k) { out[k] = sample_record(cfg, k); });
  if (stats) {
    stats->emitted = out.size();
    stats->verified = out.size();  // sample_record only returns verified records
  }
  return out;
}

Split split_with_containment(const std::vector<DatasetRecord>& records, double test_fraction, std::mt19937_64& rng) {
  std::vector<std::size_t> parent(records.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::unordered_map<std::string, std::size_t> by_family, by_input;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto [f, nf] = by_family.emplace(records[i].meta.family_id, i);
    if (!nf) unite(i, f->second);
    auto [n, ni] = by_input.emplace(records[i].input, i);
    if (!ni) unite(i, n->second);
  }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t i = 0; i < records.size(); ++i) ++sizes[find(i)];
  std::vector<std::size_t> roots;
  for (auto& [root, n] : sizes) roots.push_back(root);
  std::shuffle(roots.begin(), roots.end(), rng);
  auto target = static_cast<std::size_t>(test_fraction * static_cast<double>(records.size()) + 0.5);
  std::set<std::size_t> test_roots;
  std::size_t taken = 0;
  for (auto root : roots) {
    if (taken >= target) break;
    test_roots.insert(root);
    taken += sizes[root];
  }
  Split s;
  for (std::size_t i = 0; i < records.size(); ++i)
    (test_roots.count(find(i)) ? s.test : s.train).push_back(records[i]);
  return s;
}

std::string mask_constants(const std::string& text) {
  TokenSeq t = tokenize(text);
  if (t.empty()) return "";
  std::vector<std::vector<int>> kids(t.size());
  std::vector<int> parent(t.size(), -1);
  for (auto [p, c] : prefix_edges(t)) {
    kids[p].push_back(c);
    parent[c] = p;
  }
  auto is_sign = [&](int i) { return t[i] == Token::Plus || t[i] == Token::Minus; };
  auto kept = [&](int i) {
    int p = parent[i];
    if (p < 0) return false;
    if (t[p] == Token::Polylog && kids[p][0] == i) return true;
    if (t[p] == Token::Pow && kids[p].size() > 1 && kids[p][1] == i) return true;
    return false;
  };
  std::vector<std::string> out;
  auto emit = [&](auto&& self, int i) -> void {
    if (is_sign(i)) {
      if (kept(i)) {
        out.emplace_back(token_text(t[i]));
        for (int c : kids[i]) out.emplace_back(token_text(t[c]));
      } else {
        out.emplace_back("C");
      }
      return;
    }
    if (t[i] == Token::Div && kids[i].size() == 2 && is_sign(kids[i][0]) && is_sign(kids[i][1])) {
      out.emplace_back("C");
      return;
    }
    out.emplace_back(token_text(t[i]));
    for (int c : kids[i]) self(self, c);
  };
  emit(emit, 0);
  std::string s;
  for (auto& w : out) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

double leakage_report(const std::vector<DatasetRecord>& train, const std::vector<DatasetRecord>& test) {
  if (test.empty()) return 1.0;
  std::unordered_set<std::string> seen;
  for (const auto& r : train) seen.insert(mask_constants(r.input));
  std::size_t unique = 0;
  for (const auto& r : test) unique += !seen.count(mask_constants(r.input));
  return static_cast<double>(unique) / static_cast<double>(test.size());
}

}  // namespace polylog
