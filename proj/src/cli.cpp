#include "thnorm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "thnorm/bound.hpp"
#include "thnorm/cache.hpp"
#include "thnorm/config.hpp"
#include "thnorm/error.hpp"
#include "thnorm/report.hpp"
#include "thnorm/search.hpp"
#include "thnorm/verify.hpp"

namespace thnorm {

namespace {

struct Common {
  int threads = 1;
  std::string cache_dir;
  bool no_cache = false;
  std::string out_path;
  std::string format;
  bool with_timing = false;
};

void add_output_flags(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
}

void add_search_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
  cmd->add_option("--cache-dir", c.cache_dir, "Class-table cache directory (default: $THNORM_CACHE_DIR or ~/.cache/thnorm)");
  cmd->add_flag("--no-cache", c.no_cache, "Rebuild class tables in memory");
  cmd->add_flag("--with-timing", c.with_timing, "Include elapsed time and thread count in the report");
}

std::unique_ptr<DiskCache> open_cache(const Common& c) {
  if (c.no_cache) return nullptr;
  return std::make_unique<DiskCache>(c.cache_dir.empty() ? DiskCache::default_dir() : std::filesystem::path(c.cache_dir));
}

void emit(const Common& c, const std::string& body, std::ostream& out) {
  if (c.out_path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary | std::ios::trunc);
  file << body;
  if (!file) throw ValidationError("cannot write " + c.out_path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sup-norms of the alternating orientation-cocycle product and simplicial-volume bounds", "thnorm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // norm
  Common norm_c;
  int norm_n = 0;
  std::string norm_mode = "exhaustive";
  std::size_t witness_cap = 16;
  std::uint64_t sample_budget = 100;
  std::uint64_t norm_seed = 1;
  std::size_t tile = 256;
  auto* norm_cmd = app.add_subcommand("norm", "Compute the sup-norm of Theta_n");
  norm_cmd->add_option("--n", norm_n, "Number of circle factors")->required()->check(CLI::Range(1, kMaxDirectFactors));
  norm_cmd->add_option("--mode", norm_mode, "Search mode")
      ->check(CLI::IsMember({"paper-fast", "exhaustive", "regular-only", "sample"}))
      ->capture_default_str();
  norm_cmd->add_option("--witness-cap", witness_cap, "Witnesses kept per pattern and per report")->capture_default_str();
  norm_cmd->add_option("--samples", sample_budget, "Random configurations drawn in sample mode")->capture_default_str();
  norm_cmd->add_option("--rng-seed", norm_seed, "Seed for sample mode")->capture_default_str();
  norm_cmd->add_option("--tile", tile, "Kernel tile width in classes")->check(CLI::Range(1, 1 << 20))->capture_default_str();
  add_search_flags(norm_cmd, norm_c);
  add_output_flags(norm_cmd, norm_c, "json");

  // eval
  Common eval_c;
  std::string eval_file;
  bool eval_regular_flag = false;
  int eval_n = 0;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate Theta at one configuration");
  eval_cmd->add_option("file", eval_file, "Configuration file");
  eval_cmd->add_flag("--regular", eval_regular_flag, "Use the regular configuration with --n factors");
  eval_cmd->add_option("--n", eval_n, "Factor count for --regular")->check(CLI::Range(1, kMaxDirectFactors));
  add_output_flags(eval_cmd, eval_c, "text");

  // bound
  Common bound_c;
  int bound_n = 0;
  std::string bound_norm, bound_volume;
  std::vector<int> genera;
  int digits = 30;
  auto* bound_cmd = app.add_subcommand("bound", "Simplicial-volume lower bound Vol / (pi^n * norm)");
  bound_cmd->add_option("--n", bound_n, "Number of factors")->check(CLI::Range(1, 64));
  bound_cmd->add_option("--norm", bound_norm, "Norm override, e.g. 11/45 (default: established value for n <= 3)");
  bound_cmd->add_option("--volume", bound_volume, "Volume: number, p/q, or c*pi^k");
  bound_cmd->add_option("--surfaces", genera, "Genera of hyperbolic surface factors")->expected(1, 64);
  bound_cmd->add_option("--digits", digits, "Significant digits of the decimal bound")->check(CLI::Range(1, 60))->capture_default_str();
  add_output_flags(bound_cmd, bound_c, "text");

  // verify
  Common verify_c;
  std::string suite = "all";
  std::uint64_t verify_samples = 1000;
  std::uint64_t verify_seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Reproduce the published constants and check identities");
  verify_cmd->add_option("--suite", suite, "Suite to run")->check(CLI::IsMember({"constants", "identities", "all"}))->capture_default_str();
  verify_cmd->add_option("--samples", verify_samples, "Draws per identity")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))->capture_default_str();
  verify_cmd->add_option("--rng-seed", verify_seed, "Identity-suite seed")->capture_default_str();
  add_search_flags(verify_cmd, verify_c);
  add_output_flags(verify_cmd, verify_c, "text");

  // classes
  Common classes_c;
  int classes_n = 3;
  std::string classes_kind = "dihedral";
  auto* classes_cmd = app.add_subcommand("classes", "Dump a class table");
  classes_cmd->add_option("--n", classes_n, "Number of factors")->check(CLI::Range(1, 3))->capture_default_str();
  classes_cmd->add_option("--kind", classes_kind, "Table kind")
      ->check(CLI::IsMember({"dihedral", "rotation", "paper-distinct", "paper-stacked"}))
      ->capture_default_str();
  classes_cmd->add_option("--cache-dir", classes_c.cache_dir, "Class-table cache directory");
  classes_cmd->add_flag("--no-cache", classes_c.no_cache, "Rebuild the table in memory");
  add_output_flags(classes_cmd, classes_c, "text");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (norm_cmd->parsed()) {
      auto cache = open_cache(norm_c);
      SearchOptions so;
      so.threads = norm_c.threads;
      so.witness_cap = witness_cap;
      so.tile = tile;
      so.sample_budget = sample_budget;
      so.seed = norm_seed;
      so.store = cache.get();
      const NormReport report = norm(norm_n, parse_search_mode(norm_mode), so);
      emit(norm_c, serialize(report, parse_report_format(norm_c.format), norm_c.with_timing), out);
      if (report.budget_exceeded) {
        err << "budget exceeded: search incomplete, partial report written\n";
        return kExitBudget;
      }
      return kExitOk;
    }

    if (eval_cmd->parsed()) {
      if (eval_regular_flag == !eval_file.empty()) throw ValidationError("give either a configuration file or --regular");
      std::optional<Configuration> cfg;
      if (eval_regular_flag) {
        if (eval_n == 0) throw ValidationError("--regular needs --n");
        cfg = regular_configuration(eval_n);
      } else {
        cfg = parse_config(read_file(eval_file));
      }
      emit(eval_c, serialize_eval(*cfg, theta_direct(*cfg), parse_report_format(eval_c.format)), out);
      return kExitOk;
    }

    if (bound_cmd->parsed()) {
      if (!genera.empty() && bound_n != 0 && bound_n != static_cast<int>(genera.size())) {
        throw ValidationError("--n disagrees with the number of --surfaces");
      }
      const int n = genera.empty() ? bound_n : static_cast<int>(genera.size());
      if (n == 0) throw ValidationError("give --n or --surfaces");
      Rational v;
      if (!bound_norm.empty()) {
        v = Rational::parse(bound_norm);
      } else if (auto known = known_norm(n)) {
        v = *known;
      } else {
        throw ValidationError("no established norm for n = " + std::to_string(n) + "; pass --norm");
      }
      BoundResult result;
      if (!genera.empty()) {
        if (!bound_volume.empty()) throw ValidationError("--volume and --surfaces are exclusive");
        result = surface_bound(v, genera, digits);
      } else {
        if (bound_volume.empty()) throw ValidationError("give --volume or --surfaces");
        result = compute_bound(n, v, parse_volume(bound_volume), digits);
      }
      emit(bound_c, serialize(result, parse_report_format(bound_c.format)), out);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      auto cache = open_cache(verify_c);
      const auto start = std::chrono::steady_clock::now();
      VerificationReport report;
      report.suite = suite;
      report.seed = verify_seed;
      report.samples = verify_samples;
      report.threads = verify_c.threads;
      if (suite == "constants" || suite == "all") {
        VerifyOptions vo;
        vo.threads = verify_c.threads;
        vo.store = cache.get();
        auto items = verify_paper_constants(vo);
        report.items.insert(report.items.end(), items.begin(), items.end());
      }
      if (suite == "identities" || suite == "all") {
        auto items = verify_identities(verify_seed, verify_samples);
        report.items.insert(report.items.end(), items.begin(), items.end());
      }
      report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit(verify_c, serialize(report, parse_report_format(verify_c.format), verify_c.with_timing), out);
      return report.passed() ? kExitOk : kExitFailure;
    }

    if (classes_cmd->parsed()) {
      auto cache = open_cache(classes_c);
      const ClassTableKind kind = parse_class_table_kind(classes_kind);
      const auto table = cache ? cache->class_table(classes_n, kind) : build_class_table(classes_n, kind);
      emit(classes_c, serialize_classes(classes_n, kind, table, parse_report_format(classes_c.format)), out);
      return kExitOk;
    }
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeLimitError& e) {
    err << "unsupported size: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace thnorm
