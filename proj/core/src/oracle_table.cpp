#include "qsb/oracle_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

namespace qsb {

namespace {

void check_width(int n) {
  if (n < 1 || n > 30) {
    throw DomainError("oracle width must be in [1, 30], got " +
                      std::to_string(n));
  }
}

std::uint64_t count_marked(const std::vector<std::uint32_t>& values) {
  std::uint64_t b = 0;
  for (std::uint32_t v : values) b += v;
  return b;
}

}  // namespace

OracleTable make_boolean_table(int n, std::vector<std::uint32_t> values) {
  check_width(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  if (values.size() != size) {
    throw ShapeError("boolean table needs 2^n entries");
  }
  for (std::uint32_t v : values) {
    if (v > 1) throw DomainError("boolean table entry out of {0,1}");
  }
  OracleTable t{n, OracleKind::boolean, std::move(values), 0};
  t.marked_count = count_marked(t.values);
  return t;
}

OracleTable make_integer_table(int n, std::vector<std::uint32_t> values) {
  check_width(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  if (values.size() != size) {
    throw ShapeError("integer table needs 2^n entries");
  }
  for (std::uint32_t v : values) {
    if (v >= size) throw DomainError("integer table entry out of range");
  }
  return OracleTable{n, OracleKind::integer, std::move(values), 0};
}

OracleTable constant_boolean(int n, bool value) {
  check_width(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  OracleTable t{n, OracleKind::boolean,
                std::vector<std::uint32_t>(size, value ? 1u : 0u), 0};
  t.marked_count = value ? size : 0;
  return t;
}

OracleTable sample_s_b(int n, std::uint64_t b, Rng& rng) {
  check_width(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  if (b < 1 || b > size) {
    throw DomainError("solution count must be in [1, 2^n]");
  }
  // Partial Fisher-Yates: the first b entries of the shuffled index vector
  // are a uniform b-subset.
  std::vector<std::uint32_t> words(size);
  std::iota(words.begin(), words.end(), 0u);
  std::vector<std::uint32_t> values(size, 0u);
  for (std::uint64_t i = 0; i < b; ++i) {
    const std::uint64_t j = i + rng.uniform_u64(size - i);
    std::swap(words[i], words[j]);
    values[words[i]] = 1u;
  }
  OracleTable t{n, OracleKind::boolean, std::move(values), b};
  return t;
}

namespace {

// Draws the maximum value v for a uniform unique-argmax table. The number of
// tables with maximum v is proportional to v^(size-1) (size-1 sub-max words,
// each below v), so v is sampled by inverse CDF over weights relative to
// v = size-1; terms decay like e^-k and anything below 1e-22 is beneath the
// resolution of a 64-bit draw.
std::uint64_t sample_max_value(std::uint64_t size, Rng& rng) {
  if (size == 2) return 1;
  const double top = static_cast<double>(size - 1);
  const double exponent = static_cast<double>(size - 1);
  std::vector<double> weights;
  weights.reserve(128);
  double total = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    const double v = top - static_cast<double>(k);
    if (v < 1.0) break;
    const double w = std::exp(exponent * std::log(v / top));
    weights.push_back(w);
    total += w;
    if (w < 1e-22) break;
  }
  const double u = rng.uniform_double() * total;
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += weights[k];
    if (u < acc) return (size - 1) - k;
  }
  return size - 1 - (weights.size() - 1);
}

}  // namespace

OracleTable sample_single_max(int n, Rng& rng,
                              std::optional<std::uint64_t> rank) {
  check_width(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::uint64_t max_value;
  if (rank.has_value()) {
    if (*rank < 1 || *rank > size) {
      throw DomainError("rank must be in [1, 2^n]");
    }
    if (*rank >= size) {
      // maximum would be 0, leaving no room for the other words
      throw DomainError("rank 2^n admits no unique-argmax table");
    }
    max_value = size - *rank;
  } else {
    max_value = sample_max_value(size, rng);
  }
  std::vector<std::uint32_t> values(size);
  for (auto& v : values) {
    v = static_cast<std::uint32_t>(rng.uniform_u64(max_value));
  }
  const std::uint64_t argmax = rng.uniform_u64(size);
  values[argmax] = static_cast<std::uint32_t>(max_value);
  return OracleTable{n, OracleKind::integer, std::move(values), 0};
}

OraclePair mutate_one_word(const OracleTable& f, std::uint64_t word,
                           std::uint32_t new_value) {
  if (word >= f.domain_size()) throw DomainError("mutation word out of range");
  const std::uint32_t limit =
      f.kind == OracleKind::boolean
          ? 2u
          : static_cast<std::uint32_t>(f.domain_size());
  if (new_value >= limit) throw DomainError("mutation value out of range");
  if (new_value == f.values[word]) {
    throw DegeneratePairError("mutation does not change the table");
  }
  OraclePair pair{f, f, word};
  pair.mutated.values[word] = new_value;
  if (f.kind == OracleKind::boolean) {
    pair.mutated.marked_count = count_marked(pair.mutated.values);
  }
  return pair;
}

OraclePair random_mutation(const OracleTable& f, std::uint64_t word,
                           Rng& rng) {
  if (word >= f.domain_size()) throw DomainError("mutation word out of range");
  const std::uint64_t limit =
      f.kind == OracleKind::boolean ? 2 : f.domain_size();
  // uniform over the limit-1 values different from f(word)
  std::uint64_t v = rng.uniform_u64(limit - 1);
  if (v >= f.values[word]) ++v;
  return mutate_one_word(f, word, static_cast<std::uint32_t>(v));
}

OracleTable threshold_oracle(const OracleTable& phi, std::int64_t theta,
                             bool strict) {
  if (phi.kind != OracleKind::integer) {
    throw DomainError("threshold oracle needs an integer table");
  }
  const std::uint64_t size = phi.domain_size();
  std::vector<std::uint32_t> values(size);
  std::uint64_t marked = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    const auto v = static_cast<std::int64_t>(phi.values[x]);
    const bool hit = strict ? v > theta : v >= theta;
    values[x] = hit ? 1u : 0u;
    marked += hit;
  }
  return OracleTable{phi.n, OracleKind::boolean, std::move(values), marked};
}

std::uint64_t table_distance(const OracleTable& f, const OracleTable& g) {
  if (f.n != g.n || f.kind != g.kind) {
    throw DomainError("table distance needs same kind and width");
  }
  std::uint64_t d = 0;
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
    d += f.values[x] != g.values[x];
  }
  return d;
}

std::uint64_t table_argmax(const OracleTable& phi) {
  return static_cast<std::uint64_t>(
      std::max_element(phi.values.begin(), phi.values.end()) -
      phi.values.begin());
}

std::uint32_t table_max(const OracleTable& phi) {
  return *std::max_element(phi.values.begin(), phi.values.end());
}

std::string oracle_to_json(const OracleTable& table) {
  nlohmann::ordered_json j;
  j["n"] = table.n;
  j["kind"] = table.kind == OracleKind::boolean ? "boolean" : "integer";
  j["values"] = table.values;
  return j.dump();
}

OracleTable oracle_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  auto values = j.at("values").get<std::vector<std::uint32_t>>();
  if (kind == "boolean") return make_boolean_table(n, std::move(values));
  if (kind == "integer") return make_integer_table(n, std::move(values));
  throw DomainError("unknown oracle kind: " + kind);
}

}  // namespace qsb
