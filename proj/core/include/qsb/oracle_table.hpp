#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsb/errors.hpp"
#include "qsb/rng.hpp"

namespace qsb {

enum class OracleKind { boolean, integer };

/// Counts oracle invocations. `quantum` is incremented by the engine's query
/// transforms, `classical` by drivers on table lookups used for verification.
struct QueryCounter {
  std::uint64_t quantum = 0;
  std::uint64_t classical = 0;

  std::uint64_t total() const { return quantum + classical; }
};

/// Explicit truth table for a Boolean f: {0,1}^n -> {0,1} or an integer
/// phi: {0,1}^n -> {0,...,2^n-1}. Immutable after construction; safe to share
/// across parallel trials.
struct OracleTable {
  int n = 0;
  OracleKind kind = OracleKind::boolean;
  std::vector<std::uint32_t> values;
  std::uint64_t marked_count = 0;  // Boolean tables: cached number of 1s

  std::uint64_t domain_size() const { return std::uint64_t{1} << n; }
  int answer_width() const { return kind == OracleKind::boolean ? 1 : n; }
  std::uint32_t operator()(std::uint64_t word) const { return values[word]; }

  /// Counted classical evaluation; used by drivers when verifying candidates.
  std::uint32_t evaluate(std::uint64_t word, QueryCounter* counter) const {
    if (counter != nullptr) ++counter->classical;
    return values[word];
  }
};

/// Base and mutated tables that agree everywhere except at `word`.
struct OraclePair {
  OracleTable base;
  OracleTable mutated;
  std::uint64_t word = 0;
};

OracleTable make_boolean_table(int n, std::vector<std::uint32_t> values);
OracleTable make_integer_table(int n, std::vector<std::uint32_t> values);

/// Constant Boolean table (value 0 or 1 at every word).
OracleTable constant_boolean(int n, bool value);

/// Uniform draw from the Boolean functions with exactly b solutions.
OracleTable sample_s_b(int n, std::uint64_t b, Rng& rng);

/// Uniform draw from the integer functions with a unique argmax. When `rank`
/// is given, the maximum value is fixed to 2^n - rank.
OracleTable sample_single_max(int n, Rng& rng,
                              std::optional<std::uint64_t> rank = std::nullopt);

/// Pair differing only at `word`, with the stated new value there.
OraclePair mutate_one_word(const OracleTable& f, std::uint64_t word,
                           std::uint32_t new_value);

/// Pair differing only at `word`, new value drawn uniformly from the
/// remaining range.
OraclePair random_mutation(const OracleTable& f, std::uint64_t word, Rng& rng);

/// Boolean table marking {x : phi(x) > theta} (or >= theta when strict is
/// false). Any negative theta marks everything.
OracleTable threshold_oracle(const OracleTable& phi, std::int64_t theta,
                             bool strict = true);

/// Number of words on which the two tables disagree.
std::uint64_t table_distance(const OracleTable& f, const OracleTable& g);

std::uint64_t table_argmax(const OracleTable& phi);
std::uint32_t table_max(const OracleTable& phi);

/// JSON object {"n":..., "kind":"boolean"|"integer", "values":[...]} used for
/// experiment reproducibility artifacts.
std::string oracle_to_json(const OracleTable& table);
OracleTable oracle_from_json(const std::string& text);

}  // namespace qsb
