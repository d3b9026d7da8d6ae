#include "dlsenum/montecarlo.hpp"

#include <atomic>
#include <algorithm>
#include <chrono>
#include <numeric>
#include <cmath>
#include <memory>
#include <random>
#include <thread>

namespace dlsenum {

std::string_view to_string(EstimatorMethod m) {
  return m == EstimatorMethod::importance ? "importance" : "uniform-prefix";
}

EstimatorMethod estimator_method_from_string(std::string_view s) {
  if (s == "importance") return EstimatorMethod::importance;
  if (s == "uniform-prefix" || s == "uniform_prefix" || s == "uniform") return EstimatorMethod::uniform_prefix;
  throw Error("unknown estimator method '" + std::string(s) + "' (expected importance or uniform-prefix)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, bound) without modulo bias (Lemire).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  u128 m = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

CellSet first_cells(int k) {
  CellSet s;
  for (int c = 0; c < k; ++c) s.set(static_cast<std::size_t>(c));
  return s;
}

void check_estimator_config(Order order, const ConstraintSet& cs, int depth) {
  if (cs.vertical_symmetry) throw Error("the estimator does not support vertical symmetry");
  if (depth < order.n() || depth > order.cells()) {
    throw Error("estimator depth must be in " + std::to_string(order.n()) + ".." + std::to_string(order.cells()));
  }
}

struct Stats {
  long double mean = 0;
  long double stderr_ = 0;
};

// Two passes in index order so the result does not depend on scheduling.
Stats stats(const std::vector<long double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  long double sum = 0;
  for (long double x : xs) sum += x;
  s.mean = sum / static_cast<long double>(xs.size());
  if (xs.size() > 1) {
    long double ss = 0;
    for (long double x : xs) ss += (x - s.mean) * (x - s.mean);
    const long double var = ss / static_cast<long double>(xs.size() - 1);
    s.stderr_ = std::sqrt(var / static_cast<long double>(xs.size()));
  }
  return s;
}

template <typename F>
void parallel_for(std::uint64_t count, unsigned threads, F&& make_worker) {
  std::atomic<std::uint64_t> next{0};
  auto run = [&] {
    auto body = make_worker();
    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) body(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  for (std::thread& th : pool) th.join();
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

u128 prefix_count(Order order, const ConstraintSet& cs, int k) { return count_partial(order, cs, k); }

std::optional<u128> CompletionCache::find(const std::vector<Symbol>& key) const {
  std::lock_guard lock(mu_);
  const auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void CompletionCache::insert(std::vector<Symbol> key, u128 count) {
  std::lock_guard lock(mu_);
  map_.emplace(std::move(key), count);
}

std::size_t CompletionCache::size() const {
  std::lock_guard lock(mu_);
  return map_.size();
}

std::vector<MTransform> row_stabilizer(Order order, int rows) {
  const int m = order.half();
  const int fixed = std::clamp(rows, 0, m);
  std::vector<MTransform> out;
  for (Mirror mirror : {Mirror::none, Mirror::vertical}) {
    for (std::uint32_t swaps = 0; swaps < (1U << m); swaps += 1U << fixed) {
      std::vector<std::uint8_t> perm(static_cast<std::size_t>(m));
      std::iota(perm.begin(), perm.end(), std::uint8_t{0});
      do {
        MTransform t;
        t.mirror = mirror;
        t.pair_swaps = swaps;
        t.half_perm = perm;
        out.push_back(t);
      } while (std::next_permutation(perm.begin() + fixed, perm.end()));
    }
  }
  return out;
}

PrefixSampler::PrefixSampler(Order order, const ConstraintSet& cs, int depth, std::shared_ptr<CompletionCache> cache)
    : order_(order),
      depth_(depth),
      steps_(static_cast<std::size_t>(depth - order.n())),
      prefix_((check_estimator_config(order, cs, depth),
               row_major_plan(order, cs, FixedPrefix::first_row, fixed_cells(order, FixedPrefix::first_row)))),
      completion_(plan_cells(order, cs, FixedPrefix::custom, first_cells(depth))),
      cache_(std::move(cache)) {
  if (cache_ && depth % order.n() == 0 && cs.main_diagonal == cs.anti_diagonal) {
    stabilizer_ = row_stabilizer(order, depth / order.n());
  }
}

std::vector<Symbol> PrefixSampler::cache_key() const {
  const auto k = static_cast<std::size_t>(depth_);
  const int n = order_.n();
  auto cells = [&](const SquareGrid& g) {
    std::vector<Symbol> v(k);
    for (std::size_t c = 0; c < k; ++c) v[c] = g.at(static_cast<int>(c) / n, static_cast<int>(c) % n);
    return v;
  };
  const SquareGrid g = prefix_.grid();
  std::vector<Symbol> best = cells(g);
  for (const MTransform& t : stabilizer_) best = std::min(best, cells(apply(t, g)));
  return best;
}

// Completions of the prefix currently pushed on prefix_.
u128 PrefixSampler::completions_here() {
  std::vector<Symbol> key;
  if (cache_) {
    key = cache_key();
    if (const auto hit = cache_->find(key)) return *hit;
  }
  completion_.reseed(prefix_.grid());
  const u128 c = completion_.count_completions();
  if (cache_) cache_->insert(std::move(key), c);
  return c;
}

PrefixSampler::Sample PrefixSampler::importance_sample(std::uint64_t stream_seed) {
  std::mt19937_64 rng(stream_seed);
  prefix_.reset();
  Sample s;
  double w = 1.0;
  for (std::size_t d = 0; d < steps_; ++d) {
    Mask l = prefix_.candidates();
    const int b = std::popcount(l);
    if (b == 0) {
      prefix_.reset();
      return s;
    }
    for (std::uint64_t j = bounded(rng, static_cast<std::uint64_t>(b)); j > 0; --j) l &= l - 1;
    prefix_.try_push(static_cast<Symbol>(std::countr_zero(l)));
    w *= b;
  }
  s.weight = w;
  s.completions = completions_here();
  prefix_.reset();
  return s;
}

u128 PrefixSampler::completions(std::span<const Symbol> prefix) {
  if (prefix.size() != steps_) throw Error("prefix length does not match the estimator depth");
  prefix_.reset();
  for (Symbol v : prefix) {
    if (!prefix_.try_push(v)) {
      prefix_.reset();
      throw Error("prefix breaks a constraint");
    }
  }
  const u128 c = completions_here();
  prefix_.reset();
  return c;
}

EstimateReport estimate(const EstimatorConfig& cfg) {
  check_estimator_config(cfg.order, cfg.cs, cfg.depth);
  if (cfg.samples < 1) throw Error("samples must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const unsigned threads = std::max(1U, cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads);
  EstimateReport rep;
  rep.generator = std::string(kGeneratorId);

  if (cfg.method == EstimatorMethod::importance) {
    std::vector<long double> values(cfg.samples);
    std::vector<long double> counts(cfg.samples);
    std::vector<char> dead(cfg.samples, 0);
    auto cache = std::make_shared<CompletionCache>();
    parallel_for(cfg.samples, threads, [&] {
      auto sampler = std::make_shared<PrefixSampler>(cfg.order, cfg.cs, cfg.depth, cache);
      return [&, sampler](std::uint64_t i) {
        const PrefixSampler::Sample s = sampler->importance_sample(substream_seed(cfg.seed, i));
        values[i] = static_cast<long double>(s.weight) * static_cast<long double>(s.completions);
        counts[i] = static_cast<long double>(s.completions);
        dead[i] = s.weight == 0.0;
      };
    });
    const Stats v = stats(values);
    std::vector<long double> live;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
      if (dead[i]) ++rep.dead_ends;
      else live.push_back(counts[i]);
    }
    rep.estimate = static_cast<double>(v.mean);
    rep.standard_error = static_cast<double>(v.stderr_);
    rep.mean_completions = static_cast<double>(stats(live).mean);
    rep.samples_used = cfg.samples;
  } else {
    // One pass over every prefix with a reservoir of the requested size.
    Enumerator e(row_major_plan(cfg.order, cfg.cs, FixedPrefix::first_row,
                                fixed_cells(cfg.order, FixedPrefix::first_row)));
    const std::size_t steps = static_cast<std::size_t>(cfg.depth - cfg.order.n());
    std::mt19937_64 rng(substream_seed(cfg.seed, 0));
    std::vector<std::vector<Symbol>> reservoir;
    u128 seen = 0;
    e.for_each_extension(steps, [&] {
      std::vector<Symbol> p(steps);
      for (std::size_t i = 0; i < steps; ++i) p[i] = e.value_at(i);
      if (seen < cfg.samples) {
        reservoir.push_back(std::move(p));
      } else {
        if (seen > UINT64_MAX) throw Error("prefix space too large for reservoir sampling");
        const std::uint64_t j = bounded(rng, static_cast<std::uint64_t>(seen) + 1);
        if (j < cfg.samples) reservoir[j] = std::move(p);
      }
      ++seen;
    });
    rep.prefix_count = seen;
    std::vector<long double> counts(reservoir.size());
    auto cache = std::make_shared<CompletionCache>();
    parallel_for(reservoir.size(), threads, [&] {
      auto sampler = std::make_shared<PrefixSampler>(cfg.order, cfg.cs, cfg.depth, cache);
      return [&, sampler](std::uint64_t i) { counts[i] = static_cast<long double>(sampler->completions(reservoir[i])); };
    });
    const Stats c = stats(counts);
    const auto n_k = static_cast<long double>(seen);
    rep.mean_completions = static_cast<double>(c.mean);
    rep.estimate = static_cast<double>(n_k * c.mean);
    rep.standard_error = static_cast<double>(n_k * c.stderr_);
    rep.samples_used = reservoir.size();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace dlsenum
