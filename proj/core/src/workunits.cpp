#include "dlsenum/workunits.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "dlsenum/sym_enum.hpp"

namespace dlsenum {

std::uint64_t generate_workunits(const FillPlan& plan, std::size_t k,
                                 const std::function<void(const Workunit&)>& sink) {
  if (k < 1 || k > plan.steps.size()) {
    throw Error("workunit depth must be in 1.." + std::to_string(plan.steps.size()));
  }
  Enumerator e(plan);
  Workunit wu;
  wu.symbols.resize(k);
  e.for_each_extension(k, [&] {
    for (std::size_t i = 0; i < k; ++i) wu.symbols[i] = e.value_at(i);
    sink(wu);
    ++wu.id;
  });
  return wu.id;
}

std::vector<Workunit> generate_workunits(const FillPlan& plan, std::size_t k) {
  std::vector<Workunit> out;
  generate_workunits(plan, k, [&](const Workunit& wu) { out.push_back(wu); });
  return out;
}

std::size_t default_depth(const FillPlan& plan) {
  if (plan.steps.empty()) throw Error("plan has no steps");
  if (plan.n() == 9 && plan.cs == ConstraintSet::dls()) return std::min<std::size_t>(10, plan.steps.size());
  Enumerator e(plan);
  for (std::size_t k = 1; k < plan.steps.size(); ++k)
    if (e.count_extensions(k) >= 1000) return k;
  return plan.steps.size();
}

namespace {

std::string join_symbols(const std::vector<Symbol>& s) {
  std::string out;
  for (Symbol v : s) {
    out += ' ';
    out += std::to_string(v);
  }
  return out;
}

[[noreturn]] void bad_line(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw Error(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(const std::string& tok) {
  const u128 v = parse_u128(tok);
  if (v > UINT64_MAX) throw Error("value too large: " + tok);
  return static_cast<std::uint64_t>(v);
}

}  // namespace

void write_workunit_file(const std::filesystem::path& path, const FillPlan& plan, std::size_t k) {
  if (k < 1 || k > plan.steps.size()) {
    throw Error("workunit depth must be in 1.." + std::to_string(plan.steps.size()));
  }
  Enumerator e(plan);
  const u128 count = e.count_extensions(k);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "DLSWU1 " << plan.n() << ' ' << plan.cs.code() << ' ' << plan.hash_hex() << ' ' << k << ' '
      << to_string(count) << '\n';
  generate_workunits(plan, k, [&](const Workunit& wu) { out << wu.id << join_symbols(wu.symbols) << '\n'; });
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

WorkunitFile read_workunit_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  WorkunitFile f;
  std::string line;
  if (!std::getline(in, line)) bad_line(path, 1, "empty file");
  {
    std::istringstream hs(line);
    std::string magic, n, k, count;
    if (!(hs >> magic >> n >> f.header.cs_code >> f.header.plan_hash >> k >> count) || magic != "DLSWU1") {
      bad_line(path, 1, "expected header 'DLSWU1 <n> <cs> <plan-hash> <k> <count>'");
    }
    try {
      f.header.n = static_cast<int>(parse_u64(n));
      f.header.depth = static_cast<std::size_t>(parse_u64(k));
      f.header.count = parse_u64(count);
    } catch (const Error& err) {
      bad_line(path, 1, err.what());
    }
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() != f.header.depth + 1) bad_line(path, lineno, "expected id and " + std::to_string(f.header.depth) + " symbols");
    Workunit wu;
    try {
      wu.id = parse_u64(tok[0]);
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const std::uint64_t v = parse_u64(tok[i]);
        if (v >= static_cast<std::uint64_t>(f.header.n)) throw Error("symbol out of range");
        wu.symbols.push_back(static_cast<Symbol>(v));
      }
    } catch (const Error& err) {
      bad_line(path, lineno, err.what());
    }
    if (wu.id != f.units.size()) bad_line(path, lineno, "ids must count up from 0");
    f.units.push_back(std::move(wu));
  }
  if (f.units.size() != f.header.count) {
    throw Error(path.string() + ": header announces " + std::to_string(f.header.count) + " workunits, found " +
                std::to_string(f.units.size()));
  }
  return f;
}

ResultSet read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  ResultSet rs;
  std::string line;
  if (!std::getline(in, line)) bad_line(path, 1, "empty results file");
  {
    std::istringstream hs(line);
    std::string magic;
    if (!(hs >> magic >> rs.plan_hash >> rs.run_tag) || magic != "DLSRES1") {
      bad_line(path, 1, "expected header 'DLSRES1 <plan-hash> <run-tag>'");
    }
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    try {
      if (tok.size() != 3) throw Error("expected '<id> <count> <nodes>'");
      WorkunitResult r;
      r.id = parse_u64(tok[0]);
      r.count = parse_u128(tok[1]);
      r.nodes = parse_u64(tok[2]);
      rs.results.push_back(std::move(r));
    } catch (const Error& err) {
      rs.errors.push_back(path.string() + ":" + std::to_string(lineno) + ": " + err.what());
    }
  }
  return rs;
}

namespace {

// Append-only writer; one write(2) per line so lines never interleave.
class AppendFile {
 public:
  explicit AppendFile(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd_ < 0) throw Error("cannot open " + path.string() + ": " + std::strerror(errno));
  }
  AppendFile(const AppendFile&) = delete;
  AppendFile& operator=(const AppendFile&) = delete;
  ~AppendFile() {
    if (fd_ >= 0) ::close(fd_);
  }
  void write(const std::string& s) {
    std::lock_guard<std::mutex> lock(mu_);
    const char* p = s.data();
    std::size_t left = s.size();
    while (left > 0) {
      const ssize_t w = ::write(fd_, p, left);
      if (w < 0) {
        if (errno == EINTR) continue;
        throw Error(std::string("append failed: ") + std::strerror(errno));
      }
      p += w;
      left -= static_cast<std::size_t>(w);
    }
  }

 private:
  int fd_ = -1;
  std::mutex mu_;
};

bool ends_without_newline(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  in.seekg(0, std::ios::end);
  if (in.tellg() <= 0) return false;
  in.seekg(-1, std::ios::end);
  char c = 0;
  in.get(c);
  return c != '\n';
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> to_ranges(const std::set<std::uint64_t>& ids) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t id : ids) {
    if (!out.empty() && out.back().second == id) ++out.back().second;
    else out.emplace_back(id, id + 1);
  }
  return out;
}

}  // namespace

BatchManifest run_batch(const FillPlan& plan, const std::vector<Workunit>& units,
                        const std::filesystem::path& results_path, const RunOptions& options) {
  if (options.run_tag.empty() || options.run_tag.find_first_of(" \t\n") != std::string::npos) {
    throw Error("run tag must be a single non-empty word");
  }
  BatchManifest m;
  m.plan_hash = plan.hash_hex();
  m.total = units.size();

  std::map<std::uint64_t, u128> done;
  const bool exists = std::filesystem::exists(results_path) && std::filesystem::file_size(results_path) > 0;
  if (exists) {
    const ResultSet prev = read_results(results_path);
    if (prev.plan_hash != m.plan_hash) {
      throw Error("configuration fingerprint mismatch: results file has plan " + prev.plan_hash + ", batch has " +
                  m.plan_hash);
    }
    if (prev.run_tag != options.run_tag) {
      throw Error("results file belongs to run tag '" + prev.run_tag + "', not '" + options.run_tag + "'");
    }
    m.warnings = prev.errors;
    for (const WorkunitResult& r : prev.results) done.emplace(r.id, r.count);
  }

  AppendFile out(results_path);
  if (!exists) out.write("DLSRES1 " + m.plan_hash + " " + options.run_tag + "\n");
  else if (ends_without_newline(results_path)) out.write("\n");

  std::vector<const Workunit*> todo;
  for (const Workunit& wu : units) {
    if (options.range && (wu.id < options.range->first || wu.id >= options.range->second)) continue;
    if (done.count(wu.id)) continue;
    todo.push_back(&wu);
  }

  const unsigned threads = std::max(1U, std::min<unsigned>(resolve_threads(options.threads),
                                                           static_cast<unsigned>(std::max<std::size_t>(todo.size(), 1))));
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> produced{0};
  std::mutex mu;
  std::map<std::uint64_t, u128> fresh;
  std::vector<std::string> failures;
  auto worker = [&] {
    std::optional<Enumerator> plain;
    std::optional<SymWorkunitCounter> sym;
    if (options.engine == WorkunitEngine::plain) plain.emplace(plan);
    else sym.emplace(plan);
    while (true) {
      if (options.stop_after && produced.load() >= *options.stop_after) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      const Workunit& wu = *todo[i];
      try {
        WorkunitResult r;
        r.id = wu.id;
        if (plain) {
          const EnumerationReport rep = plain->enumerate(wu.symbols);
          r.count = rep.total;
          r.nodes = rep.nodes;
        } else {
          r.count = sym->count(wu.symbols, &r.nodes);
        }
        if (options.stop_after && produced.fetch_add(1) >= *options.stop_after) return;
        out.write(std::to_string(r.id) + " " + to_string(r.count) + " " + std::to_string(r.nodes) + "\n");
        std::lock_guard<std::mutex> lock(mu);
        fresh.emplace(r.id, r.count);
      } catch (const Error& err) {
        std::lock_guard<std::mutex> lock(mu);
        failures.push_back("workunit " + std::to_string(wu.id) + ": " + err.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  done.insert(fresh.begin(), fresh.end());
  std::set<std::uint64_t> ids;
  for (const auto& [id, count] : done) {
    if (id >= m.total) continue;
    ids.insert(id);
    m.running_sum += count;
  }
  m.completed = ids.size();
  m.failed = failures.size();
  m.pending = m.total - m.completed - m.failed;
  m.completed_ranges = to_ranges(ids);
  m.warnings.insert(m.warnings.end(), failures.begin(), failures.end());
  return m;
}

BatchManifest run_batch(const std::filesystem::path& workunit_path, const std::filesystem::path& results_path,
                        const RunOptions& options) {
  const WorkunitFile f = read_workunit_file(workunit_path);
  const FillPlan plan = default_plan(Order(f.header.n), ConstraintSet::from_code(f.header.cs_code));
  if (plan.hash_hex() != f.header.plan_hash) {
    throw Error("configuration fingerprint mismatch: workunit file has plan " + f.header.plan_hash +
                ", this build plans " + plan.hash_hex());
  }
  if (f.header.depth > plan.steps.size()) throw Error("workunit depth exceeds the plan");
  return run_batch(plan, f.units, results_path, options);
}

MergeReport merge_results(const std::vector<ResultSet>& sets, int quorum, std::optional<std::uint64_t> expected) {
  if (quorum != 1 && quorum != 2) throw Error("quorum must be 1 or 2");
  MergeReport rep;
  // id -> tag -> count; a later line for the same id and tag replaces an earlier one
  std::map<std::uint64_t, std::map<std::string, u128>> seen;
  for (const ResultSet& s : sets) {
    if (rep.plan_hash.empty()) rep.plan_hash = s.plan_hash;
    else if (s.plan_hash != rep.plan_hash) {
      rep.errors.push_back("plan fingerprint " + s.plan_hash + " (run " + s.run_tag + ") differs from " + rep.plan_hash);
    }
    rep.errors.insert(rep.errors.end(), s.errors.begin(), s.errors.end());
    for (const WorkunitResult& r : s.results) seen[r.id][s.run_tag] = r.count;
  }
  rep.expected = expected.value_or(seen.empty() ? 0 : seen.rbegin()->first + 1);
  for (std::uint64_t id = 0; id < rep.expected; ++id) {
    const auto it = seen.find(id);
    if (it == seen.end()) {
      rep.missing.push_back(id);
      continue;
    }
    std::set<u128> values;
    for (const auto& [tag, count] : it->second) values.insert(count);
    if (values.size() > 1) {
      rep.disagreements.push_back(id);
      continue;
    }
    if (static_cast<int>(it->second.size()) < quorum) {
      rep.under_quorum.push_back(id);
      continue;
    }
    ++rep.validated;
    rep.validated_sum += *values.begin();
  }
  for (const auto& [id, tags] : seen)
    if (id >= rep.expected) rep.errors.push_back("result for unknown workunit id " + std::to_string(id));
  if (rep.errors.empty() && rep.validated == rep.expected) rep.total = rep.validated_sum;
  return rep;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

EnumerationReport count_parallel(const FillPlan& plan, unsigned threads, std::optional<std::size_t> k) {
  threads = resolve_threads(threads);
  const auto start = std::chrono::steady_clock::now();
  EnumerationReport rep;
  if (threads == 1 || plan.steps.empty()) {
    Enumerator e(plan);
    rep = e.enumerate();
  } else {
    std::size_t depth = 1;
    if (k) {
      depth = *k;
    } else {
      Enumerator e(plan);
      while (depth < plan.steps.size() && e.count_extensions(depth) < 64ULL * threads) ++depth;
    }
    const std::vector<Workunit> units = generate_workunits(plan, depth);
    std::atomic<std::size_t> next{0};
    std::vector<u128> totals(threads, 0);
    std::vector<std::uint64_t> nodes(threads, 0);
    auto worker = [&](unsigned t) {
      Enumerator e(plan);
      for (std::size_t i; (i = next.fetch_add(1)) < units.size();) {
        const EnumerationReport r = e.enumerate(units[i].symbols);
        totals[t] += r.total;
        nodes[t] += r.nodes;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (std::thread& th : pool) th.join();
    for (unsigned t = 0; t < threads; ++t) {
      rep.total += totals[t];
      rep.nodes += nodes[t];
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.squares_per_second = rep.seconds > 0 ? static_cast<double>(rep.total) / rep.seconds : 0.0;
  return rep;
}

}  // namespace dlsenum
