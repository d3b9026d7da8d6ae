#include <algorithm>
#include <atomic>
#include <chrono>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli_util.hpp"
#include "dlsenum/engine.hpp"
#include "dlsenum/montecarlo.hpp"
#include "dlsenum/oracle.hpp"
#include "dlsenum/sym_enum.hpp"
#include "dlsenum/workunits.hpp"

using nlohmann::json;

namespace dlsenum::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCompute = 1;
constexpr int kExitUsage = 2;

struct Common {
  int order = 0;
  std::string constraints = "dls";
  std::string fixed = "first-row";
  std::string format = "text";
  std::optional<unsigned> threads;
};

void add_square_flags(CLI::App* cmd, Common& c, bool with_fixed = true) {
  cmd->add_option("--order,-n", c.order, "Square order (1..16)")->required();
  cmd->add_option("--constraints,-c", c.constraints, "ls, dls or vsdls")->capture_default_str();
  if (with_fixed) cmd->add_option("--fixed", c.fixed, "none, first-row or first-row-and-column")->capture_default_str();
  cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads,-t", c.threads, "Worker threads, 0 = all cores (default: $DLSENUM_THREADS or 1)");
}

struct Config {
  Order order{1};
  ConstraintSet cs;
  FixedPrefix fixed = FixedPrefix::first_row;
};

Config resolve(const Common& c) {
  Config cfg;
  cfg.order = parse_order(c.order);
  cfg.cs = parse_constraints(c.constraints);
  cfg.fixed = parse_fixed(c.fixed);
  try {
    check_config(cfg.order, cfg.cs);
  } catch (const Error& e) {
    throw UsageError(std::string("--constraints: ") + e.what());
  }
  return cfg;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// plan ---------------------------------------------------------------------

struct PlanArgs {
  Common common;
  std::optional<std::string> lookahead;
  bool no_lookahead = false;
  bool symmetry_breaking = false;
};

FillPlan build_plan(const Config& cfg, const std::optional<std::string>& lookahead, bool no_lookahead) {
  if (lookahead && no_lookahead) throw UsageError("--lookahead and --no-lookahead are exclusive");
  FillPlan plan = cfg.fixed == FixedPrefix::first_row ? default_plan(cfg.order, cfg.cs)
                                                      : compute_plan(cfg.order, cfg.cs, cfg.fixed);
  if (no_lookahead || lookahead) plan = place_lookahead(std::move(plan), 1, 0);
  if (no_lookahead) {
    for (auto& s : plan.steps) {
      s.lookahead_after = false;
      s.watched.clear();
    }
    plan.lookahead_window.reset();
  }
  if (lookahead) {
    const auto [a, b] = parse_range(*lookahead, "--lookahead");
    if (a < 1 || b > plan.steps.size()) {
      throw UsageError("--lookahead: window must lie in 1.." + std::to_string(plan.steps.size()));
    }
    for (auto& s : plan.steps) {
      s.lookahead_after = false;
      s.watched.clear();
    }
    plan.lookahead_window.reset();
    plan = place_lookahead(std::move(plan), static_cast<int>(a), static_cast<int>(b));
  }
  return plan;
}

int run_plan(const PlanArgs& a) {
  const Config cfg = resolve(a.common);
  FillPlan plan;
  if (a.symmetry_breaking) {
    if (!cfg.cs.has_diagonals()) throw UsageError("--symmetry-breaking needs --constraints dls or vsdls");
    if (cfg.fixed != FixedPrefix::first_row) throw UsageError("--symmetry-breaking needs --fixed first-row");
    plan = hourglass_plan(cfg.order, cfg.cs);
  } else {
    plan = build_plan(cfg, a.lookahead, a.no_lookahead);
  }
  if (a.common.format == "json") {
    json steps = json::array();
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
      const PlanStep& s = plan.steps[k];
      json j{{"index", k + 1},
             {"kind", s.kind == StepKind::branch ? "branch" : "forced"},
             {"row", s.cell.row},
             {"col", s.cell.col},
             {"lookahead", s.lookahead_after}};
      if (s.forcing_unit) j["unit"] = to_string(*s.forcing_unit);
      if (s.via_mirror) j["via_mirror"] = true;
      steps.push_back(j);
    }
    json out{{"order", cfg.order.n()},
             {"constraints", cfg.cs.code()},
             {"fixed", std::string(to_string(plan.fixed_prefix))},
             {"plan_hash", plan.hash_hex()},
             {"steps", steps}};
    if (plan.boundary) out["boundary"] = plan.boundary;
    if (plan.lookahead_window) out["lookahead"] = {plan.lookahead_window->first, plan.lookahead_window->second};
    print_json(out);
  } else {
    std::cout << format_plan_grid(plan) << '\n' << format_plan(plan);
    std::cout << "# plan " << plan.hash_hex() << ", " << plan.steps.size() << " steps";
    if (plan.boundary) std::cout << ", hourglass boundary after step " << plan.boundary;
    std::cout << '\n';
  }
  return kExitOk;
}

// count --------------------------------------------------------------------

struct CountArgs {
  Common common;
  bool symmetry_breaking = false;
  std::optional<std::string> lookahead;
  bool no_lookahead = false;
};

SymEnumReport sym_parallel(const Config& cfg, unsigned threads) {
  if (threads <= 1) return enumerate_sym(cfg.order, cfg.cs);
  const std::size_t boundary = hourglass_plan(cfg.order, cfg.cs).boundary;
  const std::size_t split = std::min<std::size_t>(boundary, 6);
  const std::uint64_t slices = 16ULL * threads;
  std::atomic<std::uint64_t> next{0};
  std::vector<SymEnumReport> parts(slices);
  const auto start = std::chrono::steady_clock::now();
  auto worker = [&] {
    for (std::uint64_t s; (s = next.fetch_add(1)) < slices;) parts[s] = enumerate_sym_slice(cfg.order, cfg.cs, split, s, slices);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  SymEnumReport r;
  for (const auto& p : parts) {
    r.total += p.total;
    r.hourglass_seen += p.hourglass_seen;
    r.canonical += p.canonical;
    r.multiplicity_sum += p.multiplicity_sum;
    r.nodes += p.nodes;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int run_count(const CountArgs& a) {
  const Config cfg = resolve(a.common);
  const unsigned threads = threads_or_env(a.common.threads);
  u128 normalized = 0;
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::optional<SymEnumReport> sym;
  std::string plan_hash;
  if (a.symmetry_breaking) {
    if (!cfg.cs.has_diagonals()) throw UsageError("--symmetry-breaking needs --constraints dls or vsdls");
    if (cfg.fixed != FixedPrefix::first_row) throw UsageError("--symmetry-breaking needs --fixed first-row");
    if (a.lookahead || a.no_lookahead) throw UsageError("--lookahead does not apply with --symmetry-breaking");
    sym = sym_parallel(cfg, threads);
    normalized = sym->total;
    nodes = sym->nodes;
    seconds = sym->seconds;
    plan_hash = hourglass_plan(cfg.order, cfg.cs).hash_hex();
  } else {
    const FillPlan plan = build_plan(cfg, a.lookahead, a.no_lookahead);
    const EnumerationReport r = count_parallel(plan, threads);
    normalized = r.total;
    nodes = r.nodes;
    seconds = r.seconds;
    plan_hash = plan.hash_hex();
  }
  const auto factor = total_factor(cfg.order, cfg.cs, cfg.fixed);
  const double rate = seconds > 0 ? static_cast<double>(normalized) / seconds : 0.0;
  if (a.common.format == "json") {
    json out{{"order", cfg.order.n()},
             {"constraints", cfg.cs.code()},
             {"fixed", std::string(to_string(cfg.fixed))},
             {"symmetry_breaking", a.symmetry_breaking},
             {"normalized", count_json(normalized)},
             {"total", factor ? count_json(normalized * factor->first) : json(nullptr)},
             {"total_factor", factor ? json(factor->second) : json(nullptr)},
             {"nodes", nodes},
             {"seconds", seconds},
             {"rate", rate},
             {"threads", threads},
             {"plan_hash", plan_hash}};
    if (sym) {
      out["hourglass_seen"] = sym->hourglass_seen;
      out["canonical"] = sym->canonical;
      out["multiplicity_sum"] = sym->multiplicity_sum;
    }
    print_json(out);
  } else {
    std::cout << "order " << cfg.order.n() << ", constraints " << cfg.cs.code() << ", fixed " << to_string(cfg.fixed)
              << (a.symmetry_breaking ? ", symmetry breaking" : "") << '\n';
    std::cout << "normalized: " << to_string(normalized) << '\n';
    if (factor) std::cout << "total:      " << to_string(normalized * factor->first) << "  (x " << factor->second << ")\n";
    if (sym) {
      std::cout << "hourglass designs: " << sym->hourglass_seen << ", canonical: " << sym->canonical
                << ", multiplicity sum: " << sym->multiplicity_sum << '\n';
    }
    std::cout << "nodes: " << nodes << ", seconds: " << format_double(seconds) << ", squares/s: " << format_double(rate)
              << '\n';
  }
  return kExitOk;
}

// workunits ----------------------------------------------------------------

struct GenArgs {
  Common common;
  std::optional<std::size_t> depth;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const Config cfg = resolve(a.common);
  if (cfg.fixed != FixedPrefix::first_row) throw UsageError("--fixed: workunits use the first-row plan");
  const FillPlan plan = default_plan(cfg.order, cfg.cs);
  const std::size_t k = a.depth.value_or(default_depth(plan));
  if (k < 1 || k > plan.steps.size()) throw UsageError("--depth: must be in 1.." + std::to_string(plan.steps.size()));
  write_workunit_file(a.out, plan, k);
  const WorkunitFileHeader h = read_workunit_file(a.out).header;
  if (a.common.format == "json") {
    print_json({{"file", a.out}, {"order", h.n}, {"constraints", h.cs_code}, {"plan_hash", h.plan_hash},
                {"depth", h.depth}, {"workunits", h.count}});
  } else {
    std::cout << "wrote " << h.count << " workunits (depth " << h.depth << ", plan " << h.plan_hash << ") to " << a.out
              << '\n';
  }
  return kExitOk;
}

struct RunArgs {
  std::string in;
  std::string out;
  std::optional<unsigned> threads;
  std::optional<std::string> range;
  std::string run_tag = "run";
  std::string engine = "plain";
  std::string format = "text";
};

int run_run(const RunArgs& a) {
  RunOptions opt;
  opt.threads = threads_or_env(a.threads);
  opt.run_tag = a.run_tag;
  opt.engine = a.engine == "sym" ? WorkunitEngine::sym : WorkunitEngine::plain;
  if (a.range) opt.range = parse_range(*a.range, "--range");
  const BatchManifest m = run_batch(a.in, a.out, opt);
  if (a.format == "json") {
    json ranges = json::array();
    for (const auto& [lo, hi] : m.completed_ranges) ranges.push_back({lo, hi});
    print_json({{"plan_hash", m.plan_hash}, {"total", m.total}, {"completed", m.completed}, {"pending", m.pending},
                {"failed", m.failed}, {"running_sum", count_json(m.running_sum)}, {"completed_ranges", ranges},
                {"warnings", m.warnings}});
  } else {
    for (const auto& w : m.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "plan " << m.plan_hash << ": " << m.completed << "/" << m.total << " completed, " << m.pending
              << " pending, " << m.failed << " failed\n";
    std::cout << "running sum: " << to_string(m.running_sum) << '\n';
  }
  return m.failed ? kExitCompute : kExitOk;
}

struct MergeArgs {
  int quorum = 1;
  std::vector<std::string> files;
  std::optional<std::string> workunits;
  std::string format = "text";
};

int run_merge(const MergeArgs& a) {
  std::vector<ResultSet> sets;
  for (const auto& f : a.files) sets.push_back(read_results(f));
  std::optional<std::uint64_t> expected;
  if (a.workunits) {
    const WorkunitFile wf = read_workunit_file(*a.workunits);
    expected = wf.header.count;
    for (const auto& s : sets) {
      if (s.plan_hash != wf.header.plan_hash) {
        throw Error("results for plan " + s.plan_hash + " do not belong to workunit file plan " + wf.header.plan_hash);
      }
    }
  }
  const MergeReport r = merge_results(sets, a.quorum, expected);
  if (a.format == "json") {
    print_json({{"plan_hash", r.plan_hash}, {"quorum", a.quorum}, {"expected", r.expected},
                {"validated", r.validated}, {"validated_sum", count_json(r.validated_sum)},
                {"total", r.total ? count_json(*r.total) : json(nullptr)}, {"missing", r.missing},
                {"under_quorum", r.under_quorum}, {"disagreements", r.disagreements}, {"errors", r.errors}});
  } else {
    for (const auto& e : r.errors) std::cerr << "error: " << e << '\n';
    auto list = [](const char* what, const std::vector<std::uint64_t>& ids) {
      if (ids.empty()) return;
      std::cout << what << " (" << ids.size() << "):";
      for (std::size_t i = 0; i < ids.size() && i < 20; ++i) std::cout << ' ' << ids[i];
      if (ids.size() > 20) std::cout << " ...";
      std::cout << '\n';
    };
    list("missing", r.missing);
    list("under quorum", r.under_quorum);
    list("disagreements", r.disagreements);
    std::cout << "validated " << r.validated << "/" << r.expected << ", validated sum " << to_string(r.validated_sum)
              << '\n';
    if (r.total) std::cout << "total: " << to_string(*r.total) << '\n';
    else std::cout << "total withheld\n";
  }
  return r.total ? kExitOk : kExitCompute;
}

// estimate -----------------------------------------------------------------

struct EstimateArgs {
  Common common;
  int depth = 0;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::string method = "importance";
};

int run_estimate(const EstimateArgs& a) {
  const Config cfg = resolve(a.common);
  if (cfg.fixed != FixedPrefix::first_row) throw UsageError("--fixed: the estimator fixes the first row");
  if (cfg.cs.vertical_symmetry) throw UsageError("--constraints: the estimator does not support vsdls");
  if (a.depth < cfg.order.n() || a.depth > cfg.order.cells()) {
    throw UsageError("--depth: must be in " + std::to_string(cfg.order.n()) + ".." + std::to_string(cfg.order.cells()));
  }
  if (a.samples < 1) throw UsageError("--samples: must be at least 1");
  EstimatorConfig ec;
  ec.order = cfg.order;
  ec.cs = cfg.cs;
  ec.depth = a.depth;
  ec.samples = a.samples;
  ec.seed = a.seed;
  try {
    ec.method = estimator_method_from_string(a.method);
  } catch (const Error& e) {
    throw UsageError(std::string("--method: ") + e.what());
  }
  ec.threads = threads_or_env(a.common.threads);
  const EstimateReport r = estimate(ec);
  if (a.common.format == "json") {
    print_json({{"order", cfg.order.n()}, {"constraints", cfg.cs.code()}, {"depth", a.depth},
                {"method", std::string(to_string(ec.method))}, {"seed", a.seed}, {"samples", r.samples_used},
                {"prefix_count", r.prefix_count ? count_json(*r.prefix_count) : json("not computed")},
                {"mean_completions", r.mean_completions}, {"estimate", r.estimate},
                {"standard_error", r.standard_error}, {"dead_ends", r.dead_ends}, {"generator", r.generator},
                {"seconds", r.seconds}});
  } else {
    std::cout << "order " << cfg.order.n() << ", constraints " << cfg.cs.code() << ", depth " << a.depth << ", method "
              << to_string(ec.method) << ", seed " << a.seed << '\n';
    std::cout << "prefix count: " << (r.prefix_count ? to_string(*r.prefix_count) : std::string("not computed")) << '\n';
    std::cout << "mean completions: " << format_double(r.mean_completions) << '\n';
    std::cout << "estimate (normalized): " << format_double(r.estimate) << " +- " << format_double(r.standard_error)
              << " (1 s.e., " << r.samples_used << " samples, " << r.dead_ends << " dead ends)\n";
    std::cout << "generator: " << r.generator << ", seconds: " << format_double(r.seconds) << '\n';
  }
  return kExitOk;
}

// bench --------------------------------------------------------------------

struct BenchArgs {
  Common common;
  double seconds = 5.0;
  std::uint64_t seed = 1;
  bool sweep = false;
  std::size_t sweep_units = 40;
};

struct BenchResult {
  u128 squares = 0;
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::size_t units = 0;
};

// Runs randomly chosen workunits of `plan` until the time budget is spent.
BenchResult bench_units(const FillPlan& plan, const std::vector<Workunit>& units, const std::vector<std::size_t>& order,
                        double budget, std::size_t max_units) {
  Enumerator e(plan);
  BenchResult r;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i : order) {
    if (r.units >= max_units) break;
    const EnumerationReport rep = e.enumerate(units[i].symbols);
    r.squares += rep.total;
    r.nodes += rep.nodes;
    ++r.units;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds >= budget) break;
  }
  return r;
}

int run_bench(const BenchArgs& a) {
  const Config cfg = resolve(a.common);
  if (cfg.fixed != FixedPrefix::first_row) throw UsageError("--fixed: bench uses the first-row plan");
  const FillPlan plan = default_plan(cfg.order, cfg.cs);
  const std::size_t k = default_depth(plan);
  const std::vector<Workunit> units = generate_workunits(plan, k);
  std::vector<std::size_t> order(units.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(a.seed);
  std::shuffle(order.begin(), order.end(), rng);

  json out{{"order", cfg.order.n()}, {"constraints", cfg.cs.code()}};
  if (!a.sweep) {
    const BenchResult r = bench_units(plan, units, order, a.seconds, units.size());
    const double rate = r.seconds > 0 ? static_cast<double>(r.squares) / r.seconds : 0.0;
    out.update({{"squares", count_json(r.squares)}, {"nodes", r.nodes}, {"seconds", r.seconds}, {"rate", rate},
                {"workunits", r.units}});
    const bool warn = cfg.order.n() == 9 && cfg.cs == ConstraintSet::dls() && rate < 1e6;
    if (a.common.format == "json") {
      out["warning"] = warn ? json("rate below 1e6 squares/s") : json(nullptr);
      print_json(out);
    } else {
      std::cout << "order " << cfg.order.n() << ", constraints " << cfg.cs.code() << ": " << to_string(r.squares)
                << " squares, " << r.nodes << " nodes in " << format_double(r.seconds) << " s over " << r.units
                << " workunits\nrate: " << format_double(rate) << " squares/s\n";
      if (warn) std::cout << "warning: rate below 1e6 squares/s\n";
    }
    return kExitOk;
  }

  // Lookahead sweep over a grid of windows on a fixed workunit sample.
  const std::size_t sample = std::min(a.sweep_units, units.size());
  const std::vector<std::size_t> picked(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sample));
  FillPlan bare = place_lookahead(plan, 1, 0);
  for (auto& s : bare.steps) {
    s.lookahead_after = false;
    s.watched.clear();
  }
  bare.lookahead_window.reset();
  const int steps = static_cast<int>(plan.steps.size());
  std::vector<std::pair<int, int>> windows{{1, 0}};
  const int stride = std::max(1, steps / 12);
  for (int width : {5, 10}) {
    for (int first = std::max(1, static_cast<int>(k) + 1); first + width - 1 <= steps; first += stride) {
      windows.emplace_back(first, first + width - 1);
    }
  }
  json rows = json::array();
  std::pair<int, int> best{1, 0};
  double best_time = 0;
  u128 reference = 0;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto [first, last] = windows[w];
    const FillPlan p = place_lookahead(bare, first, last);
    const BenchResult r = bench_units(p, units, picked, 1e300, sample);
    if (w == 0) reference = r.squares;
    if (r.squares != reference) throw Error("lookahead changed a count during the sweep");
    if (w == 0 || r.seconds < best_time) {
      best_time = r.seconds;
      best = {first, last};
    }
    const std::string label = first > last ? "off" : std::to_string(first) + ".." + std::to_string(last);
    rows.push_back({{"window", label}, {"seconds", r.seconds}, {"nodes", r.nodes}});
    if (a.common.format == "text") {
      std::cout << "window " << label << ": " << format_double(r.seconds) << " s, " << r.nodes << " nodes\n";
    }
  }
  const std::string rec = best.first > best.second ? "off" : std::to_string(best.first) + ".." + std::to_string(best.second);
  if (a.common.format == "json") {
    out.update({{"sweep", rows}, {"workunits", sample}, {"squares", count_json(reference)}, {"recommended", rec}});
    print_json(out);
  } else {
    std::cout << "recommended window: " << rec << " (" << sample << " workunits, " << to_string(reference)
              << " squares)\n";
  }
  return kExitOk;
}

// oracle -------------------------------------------------------------------

struct OracleArgs {
  Common common;
  std::string method = "perm";
};

int run_oracle(const OracleArgs& a) {
  const Config cfg = resolve(a.common);
  if (a.method != "perm" && a.method != "brute") throw UsageError("--method: expected perm or brute");
  const std::uint64_t c =
      a.method == "perm" ? oracle_count(cfg.order, cfg.cs, cfg.fixed) : brute_force_count(cfg.order, cfg.cs, cfg.fixed);
  if (a.common.format == "json") {
    print_json({{"order", cfg.order.n()}, {"constraints", cfg.cs.code()}, {"fixed", std::string(to_string(cfg.fixed))},
                {"method", a.method}, {"count", c}});
  } else {
    std::cout << c << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate Latin, diagonal Latin and vertically symmetric diagonal Latin squares"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dlsenum 1.0.0");

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Print the cell fill order");
  add_square_flags(plan, plan_args.common);
  plan->add_option("--lookahead", plan_args.lookahead, "Lookahead window A..B (1-based steps)");
  plan->add_flag("--no-lookahead", plan_args.no_lookahead, "Drop the default lookahead window");
  plan->add_flag("--symmetry-breaking", plan_args.symmetry_breaking, "Show the hourglass-first plan");

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Count squares exactly");
  add_square_flags(count, count_args.common);
  add_threads(count, count_args.common);
  count->add_flag("--symmetry-breaking", count_args.symmetry_breaking, "Count through canonical hourglass designs");
  count->add_option("--lookahead", count_args.lookahead, "Lookahead window A..B (1-based steps)");
  count->add_flag("--no-lookahead", count_args.no_lookahead, "Drop the default lookahead window");

  auto* wu = app.add_subcommand("workunits", "Split, run and merge prefix workunits");
  wu->require_subcommand(1);
  GenArgs gen_args;
  auto* gen = wu->add_subcommand("gen", "Write every prefix of the first K plan steps");
  add_square_flags(gen, gen_args.common);
  gen->add_option("--depth,-k", gen_args.depth, "Prefix length K (default: 10 for order 9, else >= 1000 units)");
  gen->add_option("--out,-o", gen_args.out, "Workunit file")->required();
  RunArgs run_args;
  auto* run = wu->add_subcommand("run", "Count workunits and append results");
  run->add_option("--in,-i", run_args.in, "Workunit file")->required()->check(CLI::ExistingFile);
  run->add_option("--out,-o", run_args.out, "Results file (appended, resumable)")->required();
  run->add_option("--threads,-t", run_args.threads, "Worker threads, 0 = all cores");
  run->add_option("--range", run_args.range, "Half-open id range A..B");
  run->add_option("--run-tag", run_args.run_tag, "Tag distinguishing independent runs")->capture_default_str();
  run->add_option("--engine", run_args.engine, "plain or sym")->check(CLI::IsMember({"plain", "sym"}))->capture_default_str();
  run->add_option("--format", run_args.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  MergeArgs merge_args;
  auto* merge = wu->add_subcommand("merge", "Validate and sum result files");
  merge->add_option("--quorum,-q", merge_args.quorum, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  merge->add_option("--workunits", merge_args.workunits, "Workunit file giving the expected id count")
      ->check(CLI::ExistingFile);
  merge->add_option("--format", merge_args.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  merge->add_option("results", merge_args.files, "Results files")->required()->check(CLI::ExistingFile);

  EstimateArgs est_args;
  auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of the normalized count");
  add_square_flags(est, est_args.common);
  add_threads(est, est_args.common);
  est->add_option("--depth,-k", est_args.depth, "Row-major prefix length (first row included)")->required();
  est->add_option("--samples,-s", est_args.samples, "Number of samples")->capture_default_str();
  est->add_option("--seed", est_args.seed, "Random seed")->capture_default_str();
  est->add_option("--method,-m", est_args.method, "importance or uniform-prefix")->capture_default_str();

  BenchArgs bench_args;
  bench_args.common.order = 9;
  auto* bench = app.add_subcommand("bench", "Measure enumeration throughput on random workunits");
  bench->add_option("--order,-n", bench_args.common.order, "Square order")->capture_default_str();
  bench->add_option("--constraints,-c", bench_args.common.constraints, "ls, dls or vsdls")->capture_default_str();
  bench->add_option("--format", bench_args.common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  bench->add_option("--seconds", bench_args.seconds, "Time budget")->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Workunit shuffle seed")->capture_default_str();
  bench->add_flag("--sweep", bench_args.sweep, "Time a grid of lookahead windows and recommend one");
  bench->add_option("--sweep-units", bench_args.sweep_units, "Workunits timed per window")->capture_default_str();

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "");  // hidden: empty description
  oracle->group("");
  add_square_flags(oracle, oracle_args.common);
  oracle->add_option("--method", oracle_args.method, "perm or brute")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan) return run_plan(plan_args);
    if (*count) return run_count(count_args);
    if (*gen) return run_gen(gen_args);
    if (*run) return run_run(run_args);
    if (*merge) return run_merge(merge_args);
    if (*est) return run_estimate(est_args);
    if (*bench) return run_bench(bench_args);
    if (*oracle) return run_oracle(oracle_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitUsage;
}

}  // namespace dlsenum::cli

int main(int argc, char** argv) { return dlsenum::cli::main(argc, argv); }
