#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlsenum/engine.hpp"

namespace dlsenum {

struct Workunit {
  std::uint64_t id = 0;
  std::vector<Symbol> symbols;  // values for plan steps 0..k-1
};

/// Calls `sink` for every consistent assignment of the first k plan steps, in
/// the engine's branch order, with ids counting up from 0. Returns the count.
std::uint64_t generate_workunits(const FillPlan& plan, std::size_t k, const std::function<void(const Workunit&)>& sink);
std::vector<Workunit> generate_workunits(const FillPlan& plan, std::size_t k);

/// 10 for order-9 DLS, otherwise the smallest k giving at least 1000
/// workunits (or the full plan if none does).
std::size_t default_depth(const FillPlan& plan);

struct WorkunitFileHeader {
  int n = 0;
  std::string cs_code;
  std::string plan_hash;
  std::size_t depth = 0;
  std::uint64_t count = 0;
};

/// Text format: "DLSWU1 <n> <cs> <plan-hash> <k> <count>" then one line per
/// workunit: "<id> <s1> ... <sk>".
void write_workunit_file(const std::filesystem::path& path, const FillPlan& plan, std::size_t k);
struct WorkunitFile {
  WorkunitFileHeader header;
  std::vector<Workunit> units;
};
WorkunitFile read_workunit_file(const std::filesystem::path& path);

struct WorkunitResult {
  std::uint64_t id = 0;
  u128 count = 0;
  std::uint64_t nodes = 0;
};

/// Results file: "DLSRES1 <plan-hash> <run-tag>" then "<id> <count> <nodes>".
struct ResultSet {
  std::string plan_hash;
  std::string run_tag;
  std::vector<WorkunitResult> results;
  /// "line N: ..." for lines that could not be parsed (a truncated last line
  /// after a crash, for instance).
  std::vector<std::string> errors;
};
ResultSet read_results(const std::filesystem::path& path);

enum class WorkunitEngine { plain, sym };

struct RunOptions {
  unsigned threads = 1;
  /// Half-open id range [first, last); nullopt runs everything.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> range;
  std::string run_tag = "run";
  WorkunitEngine engine = WorkunitEngine::plain;
  /// Stop after this many new results (testing hook to simulate a crash).
  std::optional<std::uint64_t> stop_after;
};

struct BatchManifest {
  std::string plan_hash;
  std::uint64_t total = 0;
  std::uint64_t completed = 0;
  std::uint64_t pending = 0;
  std::uint64_t failed = 0;
  u128 running_sum = 0;
  /// Completed ids as half-open ranges.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> completed_ranges;
  /// Corrupt lines found in an existing results file.
  std::vector<std::string> warnings;
};

/// Runs the workunits of `plan` (ids from `units`) and appends one line per
/// result to `results_path`; existing valid results there are kept and not
/// recomputed. Each line is written with a single append so concurrent
/// workers never interleave partial lines.
BatchManifest run_batch(const FillPlan& plan, const std::vector<Workunit>& units,
                        const std::filesystem::path& results_path, const RunOptions& options);

/// Reads the workunit file, rebuilds the default plan for its (n, cs) and
/// refuses to run if the plan fingerprint differs.
BatchManifest run_batch(const std::filesystem::path& workunit_path, const std::filesystem::path& results_path,
                        const RunOptions& options);

struct MergeReport {
  std::string plan_hash;
  /// Present only when every expected id validated and nothing disagreed.
  std::optional<u128> total;
  u128 validated_sum = 0;
  std::uint64_t expected = 0;
  std::uint64_t validated = 0;
  std::vector<std::uint64_t> missing;
  std::vector<std::uint64_t> under_quorum;
  std::vector<std::uint64_t> disagreements;
  std::vector<std::string> errors;
};

/// quorum 1: any result per id. quorum 2: results from at least two distinct
/// run tags that agree exactly. `expected` is the workunit count; if absent,
/// ids 0..max seen are expected.
MergeReport merge_results(const std::vector<ResultSet>& sets, int quorum,
                          std::optional<std::uint64_t> expected = std::nullopt);

/// Exact count split over workunits of depth k and run on `threads` workers.
EnumerationReport count_parallel(const FillPlan& plan, unsigned threads, std::optional<std::size_t> k = std::nullopt);

/// Worker count for a --threads value: 0 means all hardware threads.
unsigned resolve_threads(unsigned requested);

}  // namespace dlsenum
