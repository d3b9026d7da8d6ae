#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dlsenum/engine.hpp"
#include "dlsenum/mtransform.hpp"

namespace dlsenum {

enum class EstimatorMethod { importance, uniform_prefix };

std::string_view to_string(EstimatorMethod m);
EstimatorMethod estimator_method_from_string(std::string_view s);

struct EstimatorConfig {
  Order order{1};
  ConstraintSet cs;
  /// Row-major prefix length; the first row counts and is fixed.
  int depth = 1;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  EstimatorMethod method = EstimatorMethod::importance;
  unsigned threads = 1;
};

struct EstimateReport {
  /// Number of depth-k prefixes; only computed by the uniform-prefix method.
  std::optional<u128> prefix_count;
  /// Average completion count over the sampled prefixes (unweighted).
  double mean_completions = 0.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples_used = 0;
  /// Samples whose random path hit a dead end before depth k.
  std::uint64_t dead_ends = 0;
  std::string generator;
  double seconds = 0.0;
};

/// Identifier of the random source recorded in every report.
inline constexpr std::string_view kGeneratorId = "mt19937_64+splitmix64-substreams";

/// Seed of the independent stream used for sample `index`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

EstimateReport estimate(const EstimatorConfig& cfg);

/// Same as count_partial.
u128 prefix_count(Order order, const ConstraintSet& cs, int k);

/// Completion counts keyed by a canonical prefix. When the prefix is a whole
/// number of rows, prefixes related by a transform that keeps each of those
/// rows in place share an entry.
class CompletionCache {
 public:
  std::optional<u128> find(const std::vector<Symbol>& key) const;
  void insert(std::vector<Symbol> key, u128 count);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::vector<Symbol>, u128> map_;
};

/// Transforms mapping each of rows 0..rows-1 onto itself: optional vertical
/// mirror, swaps and permutations of the pairs not touching those rows.
std::vector<MTransform> row_stabilizer(Order order, int rows);

/// Draws random row-major prefixes and counts their completions. Exposed so
/// tests can drive single samples.
class PrefixSampler {
 public:
  PrefixSampler(Order order, const ConstraintSet& cs, int depth, std::shared_ptr<CompletionCache> cache = nullptr);

  struct Sample {
    /// Product of branch factors along the path; 0 on a dead end.
    double weight = 0.0;
    u128 completions = 0;
  };
  /// One importance sample from the stream seeded with `stream_seed`.
  Sample importance_sample(std::uint64_t stream_seed);
  /// Completions of a full prefix (values of the row-major steps n..k-1).
  u128 completions(std::span<const Symbol> prefix);

  Enumerator& prefix_engine() { return prefix_; }
  std::size_t steps() const { return steps_; }

 private:
  u128 completions_here();
  std::vector<Symbol> cache_key() const;

  Order order_;
  int depth_;
  std::size_t steps_;
  Enumerator prefix_;
  Enumerator completion_;
  std::shared_ptr<CompletionCache> cache_;
  std::vector<MTransform> stabilizer_;
};

}  // namespace dlsenum
