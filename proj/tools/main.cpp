// evcheck command-line driver.  Talks to the verifier exclusively through
// the public C API.
//
// Exit codes: 0 SAFE, 1 UNSAFE, 2 UNKNOWN, 3 usage error, 4 parse error,
// 5 I/O error.  `bench` exits 0 when the corpus ran (whatever the verdicts),
// using the same 3/4/5 codes for usage and setup failures.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "evcheck/evcheck.h"

namespace {

constexpr int kExitSafe = 0;
constexpr int kExitUnsafe = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;
constexpr int kExitParse = 4;
constexpr int kExitIo = 5;

struct CommonFlags {
  std::string mode = "explicit-cegar";
  std::string refine = "prune";
  std::string traversal = "dfs";
  bool scoped_precision = true;
  std::uint64_t state_budget = 1'000'000;
  std::uint64_t max_refinements = 100;
  double time_limit = 0.0;  // seconds; 0 = unlimited
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--mode", flags->mode, "Analysis mode")
      ->check(CLI::IsMember({"explicit-cegar", "explicit-full"}))
      ->capture_default_str();
  cmd->add_option("--refine", flags->refine, "Refinement strategy")
      ->check(CLI::IsMember({"prune", "restart"}))
      ->capture_default_str();
  cmd->add_option("--traversal", flags->traversal, "Waitlist order")
      ->check(CLI::IsMember({"dfs", "bfs"}))
      ->capture_default_str();
  cmd->add_option("--scoped-precision", flags->scoped_precision,
                  "Widen refined precisions to the variable scope")
      ->capture_default_str();
  cmd->add_option("--state-budget", flags->state_budget,
                  "Abort with UNKNOWN after creating this many ARG nodes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-refinements", flags->max_refinements,
                  "Maximum number of CEGAR refinements")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--time-limit", flags->time_limit,
                  "Time limit in seconds (0 = unlimited)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

struct OptionsHandle {
  ev_options* ptr = nullptr;
  OptionsHandle() : ptr(ev_options_create()) {}
  ~OptionsHandle() { ev_options_free(ptr); }
  OptionsHandle(const OptionsHandle&) = delete;
  OptionsHandle& operator=(const OptionsHandle&) = delete;
};

bool apply_flags(ev_options* options, const CommonFlags& flags,
                 bool want_arg_dump) {
  if (ev_options_set_mode(options, flags.mode.c_str()) != EV_OK) return false;
  if (ev_options_set_refinement(options, flags.refine.c_str()) != EV_OK)
    return false;
  if (ev_options_set_traversal(options, flags.traversal.c_str()) != EV_OK)
    return false;
  if (ev_options_set_scoped_precision(options, flags.scoped_precision) !=
      EV_OK)
    return false;
  if (ev_options_set_state_budget(options, flags.state_budget) != EV_OK)
    return false;
  if (ev_options_set_max_refinements(options, flags.max_refinements) != EV_OK)
    return false;
  auto limit_ms = static_cast<std::uint64_t>(flags.time_limit * 1000.0);
  if (ev_options_set_time_limit_ms(options, limit_ms) != EV_OK) return false;
  if (ev_options_set_arg_dump(options, want_arg_dump) != EV_OK) return false;
  return true;
}

int load_task(const std::string& path, ev_task** task) {
  switch (ev_task_from_file(path.c_str(), task)) {
    case EV_OK:
      return kExitSafe;
    case EV_ERR_IO:
      std::cerr << "evcheck: " << ev_last_error() << "\n";
      return kExitIo;
    case EV_ERR_PARSE:
      std::cerr << "evcheck: " << ev_last_error() << "\n";
      return kExitParse;
    default:
      std::cerr << "evcheck: " << ev_last_error() << "\n";
      return kExitUsage;
  }
}

bool write_file(const std::string& path, const std::string& content,
                const char* what) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    std::cerr << "evcheck: cannot write " << what << " to '" << path << "'\n";
    return false;
  }
  return true;
}

// ---- verify -------------------------------------------------------------

int run_verify(const std::string& task_path, const CommonFlags& flags,
               const std::string& witness_path,
               const std::string& arg_dump_path) {
  ev_task* task = nullptr;
  int rc = load_task(task_path, &task);
  if (rc != kExitSafe) return rc;
  std::unique_ptr<ev_task, decltype(&ev_task_free)> task_guard(task,
                                                               ev_task_free);

  OptionsHandle options;
  if (!apply_flags(options.ptr, flags, !arg_dump_path.empty())) {
    std::cerr << "evcheck: " << ev_last_error() << "\n";
    return kExitUsage;
  }

  ev_result* result = nullptr;
  if (ev_verify(task, options.ptr, &result) != EV_OK) {
    std::cerr << "evcheck: " << ev_last_error() << "\n";
    return kExitUsage;
  }
  std::unique_ptr<ev_result, decltype(&ev_result_free)> result_guard(
      result, ev_result_free);

  std::cout << "task: " << task_path << "\n"
            << "mode: " << flags.mode << "  refine: " << flags.refine
            << "  scoped-precision: "
            << (flags.scoped_precision ? "on" : "off")
            << "  traversal: " << flags.traversal << "\n"
            << "VERDICT: " << ev_result_verdict_string(result) << "\n"
            << "refinements: " << ev_result_refinements(result) << "\n"
            << "arg nodes: " << ev_result_arg_nodes_created(result)
            << " created, " << ev_result_arg_nodes_peak(result) << " peak\n"
            << "max tracked vars per location: "
            << ev_result_max_tracked_vars(result) << "\n"
            << "time: " << ev_result_wall_time_ms(result) << " ms\n";

  const char* witness = ev_result_witness(result);
  if (witness) {
    if (!witness_path.empty()) {
      if (!write_file(witness_path, witness, "witness")) return kExitIo;
      std::cout << "witness written to " << witness_path << "\n";
    } else {
      std::cout << "witness:\n" << witness;
    }
  }
  const char* dump = ev_result_arg_dump(result);
  if (dump && !arg_dump_path.empty()) {
    if (!write_file(arg_dump_path, dump, "ARG dump")) return kExitIo;
  }

  switch (ev_result_verdict(result)) {
    case EV_VERDICT_SAFE:
      return kExitSafe;
    case EV_VERDICT_UNSAFE:
      return kExitUnsafe;
    default:
      return kExitUnknown;
  }
}

// ---- bench -------------------------------------------------------------

struct BenchEntry {
  std::string name;
  std::string expected;  // SAFE | UNSAFE
  std::string path;
};

struct BenchRow {
  std::string name;
  std::string expected;
  std::string verdict;
  std::uint64_t time_ms = 0;
  std::uint64_t refinements = 0;
  std::uint64_t arg_states = 0;
  long long score = 0;
  bool ran = false;
};

struct ScoreWeights {
  long long correct_safe = 2;
  long long correct_unsafe = 1;
  long long wrong_safe = -8;    // claimed SAFE but the task is UNSAFE
  long long wrong_unsafe = -4;  // claimed UNSAFE but the task is SAFE
};

long long score_of(const std::string& expected, ev_verdict verdict,
                   const ScoreWeights& weights) {
  if (verdict == EV_VERDICT_UNKNOWN) return 0;
  if (verdict == EV_VERDICT_SAFE)
    return expected == "SAFE" ? weights.correct_safe : weights.wrong_safe;
  return expected == "UNSAFE" ? weights.correct_unsafe : weights.wrong_unsafe;
}

std::optional<std::vector<BenchEntry>> read_manifest(
    const std::filesystem::path& corpus) {
  std::filesystem::path manifest_path = corpus / "manifest.tsv";
  std::ifstream in(manifest_path);
  if (!in) {
    std::cerr << "evcheck: cannot open manifest '" << manifest_path.string()
              << "'\n";
    return std::nullopt;
  }
  std::vector<BenchEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      std::cerr << "evcheck: warning: manifest line " << line_no
                << " is not <task>\\t<SAFE|UNSAFE>; skipped\n";
      continue;
    }
    BenchEntry entry;
    entry.name = line.substr(0, tab);
    entry.expected = line.substr(tab + 1);
    while (!entry.expected.empty() && entry.expected.back() == ' ')
      entry.expected.pop_back();
    if (entry.expected != "SAFE" && entry.expected != "UNSAFE") {
      std::cerr << "evcheck: warning: manifest line " << line_no
                << " has verdict '" << entry.expected << "'; skipped\n";
      continue;
    }
    if (entry.name.find(',') != std::string::npos) {
      std::cerr << "evcheck: warning: task name '" << entry.name
                << "' contains a comma; skipped\n";
      continue;
    }
    entry.path = (corpus / entry.name).string();
    if (!std::filesystem::exists(entry.path)) {
      std::cerr << "evcheck: warning: task '" << entry.name
                << "' listed in manifest but missing; skipped\n";
      continue;
    }
    entries.push_back(std::move(entry));
  }
  // Tasks on disk without a manifest entry are skipped with a warning.
  std::vector<std::filesystem::path> files;
  for (const auto& dirent : std::filesystem::directory_iterator(corpus))
    if (dirent.path().extension() == ".ev") files.push_back(dirent.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    std::string name = file.filename().string();
    bool listed = false;
    for (const BenchEntry& entry : entries)
      if (entry.name == name) listed = true;
    if (!listed)
      std::cerr << "evcheck: warning: task '" << name
                << "' has no manifest entry; skipped\n";
  }
  return entries;
}

int run_bench(const std::string& corpus_path, const CommonFlags& flags,
              const std::string& csv_path, unsigned jobs,
              const ScoreWeights& weights) {
  std::filesystem::path corpus(corpus_path);
  if (!std::filesystem::is_directory(corpus)) {
    std::cerr << "evcheck: '" << corpus_path << "' is not a directory\n";
    return kExitIo;
  }
  auto entries = read_manifest(corpus);
  if (!entries) return kExitIo;

  std::vector<BenchRow> rows(entries->size());
  std::atomic<std::size_t> next{0};
  std::mutex stderr_mutex;

  auto worker = [&]() {
    OptionsHandle options;
    if (!apply_flags(options.ptr, flags, false)) return;
    for (;;) {
      std::size_t index = next.fetch_add(1);
      if (index >= entries->size()) return;
      const BenchEntry& entry = (*entries)[index];
      BenchRow& row = rows[index];
      row.name = entry.name;
      row.expected = entry.expected;

      ev_task* task = nullptr;
      ev_status status = ev_task_from_file(entry.path.c_str(), &task);
      if (status != EV_OK) {
        std::lock_guard<std::mutex> lock(stderr_mutex);
        std::cerr << "evcheck: warning: " << ev_last_error() << "\n";
        row.verdict = status == EV_ERR_PARSE ? "UNKNOWN(ParseError)"
                                             : "UNKNOWN(IoError)";
        row.ran = true;
        continue;
      }
      ev_result* result = nullptr;
      if (ev_verify(task, options.ptr, &result) != EV_OK) {
        std::lock_guard<std::mutex> lock(stderr_mutex);
        std::cerr << "evcheck: warning: " << ev_last_error() << "\n";
        row.verdict = "UNKNOWN(InternalError)";
        row.ran = true;
        ev_task_free(task);
        continue;
      }
      row.verdict = ev_result_verdict_string(result);
      row.time_ms = ev_result_wall_time_ms(result);
      row.refinements = ev_result_refinements(result);
      row.arg_states = ev_result_arg_nodes_created(result);
      row.score = score_of(entry.expected, ev_result_verdict(result), weights);
      row.ran = true;
      ev_result_free(result);
      ev_task_free(task);
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }

  // Rows are emitted in manifest order regardless of completion order.
  std::ostringstream csv;
  csv << "task,expected,verdict,time_ms,refinements,arg_states,score\n";
  std::uint64_t total_time = 0, total_refinements = 0, total_states = 0;
  long long total_score = 0;
  for (const BenchRow& row : rows) {
    if (!row.ran) continue;
    csv << row.name << "," << row.expected << "," << row.verdict << ","
        << row.time_ms << "," << row.refinements << "," << row.arg_states
        << "," << row.score << "\n";
    total_time += row.time_ms;
    total_refinements += row.refinements;
    total_states += row.arg_states;
    total_score += row.score;
  }
  csv << "TOTAL,,," << total_time << "," << total_refinements << ","
      << total_states << "," << total_score << "\n";

  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    if (!write_file(csv_path, csv.str(), "CSV report")) return kExitIo;
    std::cout << "wrote " << csv_path << " (" << rows.size()
              << " tasks, total score " << total_score << ")\n";
  }
  return kExitSafe;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evcheck — explicit-value software model checker"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ev_version());

  CommonFlags verify_flags;
  std::string task_path, witness_path, arg_dump_path;
  CLI::App* verify = app.add_subcommand("verify", "Verify a single task");
  verify->add_option("task", task_path, "Task file (.ev)")->required();
  add_common_flags(verify, &verify_flags);
  verify->add_option("--witness", witness_path,
                     "Write the violation witness to this file");
  verify->add_option("--arg-dump", arg_dump_path,
                     "Write the final abstract reachability graph");

  CommonFlags bench_flags;
  std::string corpus_path, csv_path;
  unsigned jobs = 1;
  ScoreWeights weights;
  CLI::App* bench =
      app.add_subcommand("bench", "Run a task corpus and emit a CSV report");
  bench->add_option("corpus", corpus_path,
                    "Directory with .ev tasks and manifest.tsv")
      ->required();
  add_common_flags(bench, &bench_flags);
  bench->add_option("--csv", csv_path, "CSV output path (default: stdout)");
  bench->add_option("--jobs", jobs, "Verify this many tasks concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--score-wrong-safe", weights.wrong_safe,
                    "Score for claiming SAFE on an unsafe task")
      ->capture_default_str();
  bench->add_option("--score-wrong-unsafe", weights.wrong_unsafe,
                    "Score for claiming UNSAFE on a safe task")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    if (error.get_name() == "CallForHelp" ||
        error.get_name() == "CallForVersion")
      return app.exit(error);
    app.exit(error);
    return kExitUsage;
  }

  if (verify->parsed())
    return run_verify(task_path, verify_flags, witness_path, arg_dump_path);
  return run_bench(corpus_path, bench_flags, csv_path, jobs, weights);
}
