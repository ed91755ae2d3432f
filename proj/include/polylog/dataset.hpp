#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "polylog/identities.hpp"
#include "polylog/symbol.hpp"

namespace polylog {

enum class Task { RlStart, DilogPairs, SymbolPairs };

std::string_view task_name(Task t);
Task task_from_name(std::string_view name);  // throws InvalidArgument

struct GenConfig {
  Task task = Task::RlStart;
  int weight = 2;  // SymbolPairs
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  bool scramble_symbols = false;  // SymbolPairs: up to 5 symbol moves per record
  int variants_per_family = 1;    // scrambles drawn from one skeleton
  int max_retries = 100;
  std::size_t max_tokens_in = 0;  // 0 picks 512 for expressions, 1024 for symbols
};

struct RecordMeta {
  int n_scrambles = 0;
  int n_terms = 0;
  int weight = 2;
  std::string family_id;
};

struct DatasetRecord {
  std::uint64_t id = 0;
  Task task = Task::RlStart;
  std::string input;   // space separated prefix tokens
  std::string output;
  RecordMeta meta;
};

nlohmann::json to_json(const DatasetRecord& r);
DatasetRecord record_from_json(const nlohmann::json& j);

// All canonical non-constant n(x)/d(x) with deg <= 2 and integer coefficients in [-2, 2], sorted.
const std::vector<RationalFunc>& argument_pool();

// A scrambled zero and its scramble bookkeeping.
struct RlStart {
  DilogSum expr;
  int n_scrambles = 0;
  int n_terms = 0;
  std::string family;
};

// Single draws; throw ExhaustedRetries after max_retries discarded samples.
RlStart sample_rl_start(std::mt19937_64& rng, int max_retries = 100);
DatasetRecord sample_record(const GenConfig& cfg, std::uint64_t index);

// Checks the pair with its task's oracle.
bool verify_record(const DatasetRecord& r);

struct GenStats {
  std::size_t emitted = 0;
  std::size_t verified = 0;
};

// Record k draws from seed_seq{seed, family(k)} so output is independent of the worker count.
std::vector<DatasetRecord> generate(const GenConfig& cfg, GenStats* stats = nullptr);

// Random argument trees.
struct TreeStats {
  std::size_t unary[2] = {0, 0};          // pow2, pow3
  std::size_t binary[4] = {0, 0, 0, 0};   // add, sub, mul, div
  std::size_t leaves[2] = {0, 0};         // x, const
};
Expr sample_argument_tree(std::mt19937_64& rng, TreeStats* stats = nullptr);
Rational sample_coefficient(std::mt19937_64& rng);

struct Split {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> test;
};

// Whole families, and every record sharing an input string, go to the same side.
Split split_with_containment(const std::vector<DatasetRecord>& records, double test_fraction, std::mt19937_64& rng);

// Token string with every numeric constant (sign included) replaced by C; polylog weights and exponents stay.
std::string mask_constants(const std::string& tokens);
// Fraction of test inputs whose masked form matches no masked train input; 1 when test is empty.
double leakage_report(const std::vector<DatasetRecord>& train, const std::vector<DatasetRecord>& test);

}  // namespace polylog
