#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvecross/curve_io.hpp"
#include "curvecross/error.hpp"
#include "curvecross/exact.hpp"
#include "curvecross/intersection.hpp"
#include "curvecross/montecarlo.hpp"
#include "curvecross/sampling.hpp"
#include "curvecross/verify_chain.hpp"

#ifndef CURVECROSS_VERSION
#define CURVECROSS_VERSION "0.0.0"
#endif

namespace curvecross::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

// Sends text to --out when given, to stdout otherwise.
void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
}

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

// FNV-1a over the canonical JSON text of the run configuration.
std::string config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return hex64(h);
}

json manifest(const std::string& command, const json& config, double seconds) {
  json m = config;
  m["command"] = command;
  m["config_hash"] = config_hash(config);
  m["tool_version"] = CURVECROSS_VERSION;
  m["wall_clock_seconds"] = seconds;
  return m;
}

// CSV outputs carry their manifest in a sibling "<file>.manifest.json".
void write_sidecar_manifest(const std::string& data_path, const json& m) {
  write_file(data_path + ".manifest.json", m.dump(2) + "\n");
}

json rational_json(const MeanValue& v) {
  return {{"numerator", v.exact.numerator().str()},
          {"denominator", v.exact.denominator().str()},
          {"approx", v.approx}};
}

PairDistribution parse_distribution(const std::string& text) {
  if (text == "uniform") return UniformPairs{};
  const std::string prefix = "maxnorm:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string k = text.substr(prefix.size());
    std::size_t used = 0;
    double exponent = 0.0;
    try {
      exponent = std::stod(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || k.empty()) throw PreconditionError("bad exponent in --distribution " + text);
    if (!(exponent >= 0.0)) throw PreconditionError("--distribution exponent must be non-negative");
    return MaxNormWeighted{exponent};
  }
  throw PreconditionError("--distribution must be 'uniform' or 'maxnorm:k'");
}

std::string distribution_name(const PairDistribution& d) {
  if (const auto* w = std::get_if<MaxNormWeighted>(&d)) return "maxnorm:" + format_exact_double(w->exponent);
  return "uniform";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- exact

struct ExactArgs {
  std::optional<unsigned> n;
  unsigned r = 0;
  std::string sweep;
  std::string out;
};

int cmd_exact(const ExactArgs& a, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const SobolevOrder r{a.r};
  if (!a.sweep.empty()) {
    const auto [lo, hi] = parse_range(a.sweep);
    std::ostringstream csv;
    csv << "N,numerator,denominator,approx,asymptote_ratio\n";
    for (unsigned n = lo; n <= hi; ++n) {
      const MeanValue v = mean_intersections_exact(n, r);
      csv << n << ',' << v.exact.numerator() << ',' << v.exact.denominator() << ','
          << format_exact_double(v.approx) << ',';
      if (n > 0) csv << format_exact_double(v.approx / (std::numbers::pi / 3.0 * n * n));
      csv << '\n';
    }
    emit(csv.str(), a.out, out);
    if (!a.out.empty()) {
      write_sidecar_manifest(a.out, manifest("exact", {{"sweep", a.sweep}, {"r", a.r}}, seconds_since(t0)));
    }
    return kSuccess;
  }
  if (!a.n) throw PreconditionError("exact needs --N or --sweep");
  const MeanValue v = mean_intersections_exact(*a.n, r);
  json doc = rational_json(v);
  doc["N"] = *a.n;
  doc["r"] = a.r;
  doc["exact"] = v.exact.to_string();
  doc["manifest"] = manifest("exact", {{"N", *a.n}, {"r", a.r}}, seconds_since(t0));
  emit(doc.dump(2) + "\n", a.out, out);
  return kSuccess;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  unsigned n = 1;
  unsigned r = 0;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string distribution = "uniform";
  double seg_target = 0.0;
  double newton_tol = 1e-12;
  std::string csv;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.n = a.n;
  cfg.r = SobolevOrder{a.r};
  cfg.num_samples = a.samples;
  cfg.master_seed = a.seed;
  cfg.worker_count = a.workers;
  cfg.distribution = parse_distribution(a.distribution);
  cfg.counting.seg_target = a.seg_target;
  cfg.counting.newton_tol = a.newton_tol;
  cfg.keep_records = !a.csv.empty();
  const ExperimentResult res = run_experiment(cfg);

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "sample_index,count,degenerate\n";
    for (const auto& rec : res.records) csv << rec.index << ',' << rec.count << ',' << (rec.degenerate ? 1 : 0) << '\n';
    write_file(a.csv, csv.str());
  }

  json hist = json::object();
  for (const auto& [k, v] : res.histogram) hist[std::to_string(k)] = v;
  const json config = {{"N", a.n},
                       {"r", a.r},
                       {"seed", a.seed},
                       {"samples", a.samples},
                       {"distribution", distribution_name(cfg.distribution)},
                       {"seg_target", a.seg_target},
                       {"newton_tol", a.newton_tol}};
  json doc = {{"mean", res.mean},
              {"variance", res.variance},
              {"stderr", res.std_error},
              {"ci95", {res.ci95.first, res.ci95.second}},
              {"exact", rational_json(res.exact)},
              {"z_score", res.z_score_vs_exact},
              {"histogram", hist},
              {"samples_used", res.samples_used},
              {"degenerate_discards", res.degenerate_discards},
              {"discard_rate", res.discard_rate()},
              {"warning", res.discard_warning}};
  json m = manifest("simulate", config, seconds_since(t0));
  m["workers"] = a.workers;
  doc["manifest"] = m;
  if (!a.csv.empty()) write_sidecar_manifest(a.csv, m);
  emit(doc.dump(2) + "\n", a.out, out);
  return kSuccess;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string degrees = "1..3";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [lo, hi] = parse_range(a.degrees);
  std::vector<unsigned> degrees;
  for (unsigned n = lo; n <= hi; ++n) degrees.push_back(n);
  ChainOptions opts;
  opts.fiber_attempts = a.samples;
  opts.seed = SeedSpec{a.seed, 0};
  opts.workers = a.workers;
  const ChainReport report = run_chain(degrees, opts);

  std::ostringstream table;
  table << std::left << std::setw(48) << "step" << std::right << std::setw(24) << "closed form" << std::setw(24)
        << "numeric" << std::setw(12) << "error" << "  status\n";
  json steps = json::array();
  for (const auto& s : report.steps) {
    const char* status = s.skipped ? "SKIP" : (s.passed ? "PASS" : "FAIL");
    table << std::left << std::setw(48) << s.name << std::right << std::setprecision(16) << std::setw(24)
          << s.closed_form << std::setw(24) << s.numeric << std::setprecision(3) << std::setw(12)
          << s.relative_error << "  " << status << '\n';
    steps.push_back({{"name", s.name},
                     {"closed_form_value", s.closed_form},
                     {"numeric_value", s.numeric},
                     {"relative_error", s.relative_error},
                     {"tolerance", s.tolerance},
                     {"criterion", s.criterion},
                     {"stderr", s.std_error},
                     {"skipped", s.skipped},
                     {"passed", s.passed}});
  }
  const json config = {{"N", a.degrees}, {"samples", a.samples}, {"seed", a.seed}};
  json doc = {{"steps", steps}, {"all_passed", report.all_passed()}};
  json m = manifest("verify", config, seconds_since(t0));
  m["workers"] = a.workers;
  doc["manifest"] = m;

  out << table.str();
  if (a.out.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_file(a.out, doc.dump(2) + "\n");
  }
  return report.all_passed() ? kSuccess : kToleranceFailure;
}

// ---------------------------------------------------------------- count

struct CountArgs {
  std::string file_f;
  std::string file_g;
  double seg_target = 0.0;
  double newton_tol = 1e-12;
  std::string out;
};

CurveFile load_curve(const std::string& path) {
  try {
    return parse_curve_json(read_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

int cmd_count(const CountArgs& a, std::ostream& out) {
  const CurveFile f = load_curve(a.file_f);
  const CurveFile g = load_curve(a.file_g);
  if (f.curve.degree() != g.curve.degree()) throw SchemaError("the two curve files have different degrees");
  CountingConfig cfg;
  cfg.seg_target = a.seg_target;
  cfg.newton_tol = a.newton_tol;
  cfg.metric = SobolevOrder{std::max(f.r.r, g.r.r)};
  const IntersectionResult res = count_intersections(f.curve, g.curve, cfg);
  json sols = json::array();
  for (const auto& [phi, psi] : res.solutions) sols.push_back({phi, psi});
  json doc = {{"count", res.count}, {"degenerate", res.degenerate}, {"solutions", sols}};
  if (res.count > 0) doc["min_abs_det"] = res.min_abs_det;
  emit(doc.dump(2) + "\n", a.out, out);
  return kSuccess;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  unsigned n = 1;
  unsigned r = 0;
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw IoError("cannot create directory " + a.out + ": " + ec.message());

  json curves = json::array();
  for (std::uint64_t i = 0; i < a.count; ++i) {
    const SeedSpec seed{a.seed, i};
    const TrigCurve c = sample_unit_ball_curve(a.n, SobolevOrder{a.r}, seed);
    std::ostringstream name;
    name << "curve_" << std::setw(4) << std::setfill('0') << i << ".json";
    const fs::path path = fs::path(a.out) / name.str();
    write_file(path.string(), to_curve_json(c, SobolevOrder{a.r}));
    curves.push_back({{"file", name.str()}, {"master_seed", a.seed}, {"stream_index", i}, {"N", a.n}, {"r", a.r}});
    out << path.string() << '\n';
  }
  const json config = {{"N", a.n}, {"r", a.r}, {"master_seed", a.seed}, {"count", a.count}};
  json doc = manifest("sample", config, seconds_since(t0));
  doc["curves"] = curves;
  write_file((fs::path(a.out) / "manifest.json").string(), doc.dump(2) + "\n");
  return kSuccess;
}

}  // namespace

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto parse_uint = [&](const std::string& s) -> unsigned {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw PreconditionError("bad range '" + text + "'");
    }
    return static_cast<unsigned>(std::stoul(s));
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const unsigned v = parse_uint(text);
    return {v, v};
  }
  const unsigned lo = parse_uint(text.substr(0, dots));
  const unsigned hi = parse_uint(text.substr(dots + 2));
  if (hi < lo) throw PreconditionError("empty range '" + text + "'");
  return {lo, hi};
}

unsigned default_workers() {
  if (const char* env = std::getenv("CURVECROSS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random trigonometric curves: exact and simulated mean intersection numbers", "curvecross"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CURVECROSS_VERSION);

  ExactArgs ea;
  auto* exact = app.add_subcommand("exact", "Exact mean intersection number (rational)");
  exact->add_option("--N", ea.n, "Curve degree");
  exact->add_option("--r", ea.r, "Sobolev order (0 = L2)");
  exact->add_option("--sweep", ea.sweep, "Degree range A..B; emits CSV");
  exact->add_option("--out", ea.out, "Output file (default stdout)");

  SimulateArgs sa;
  sa.workers = default_workers();
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the mean");
  simulate->add_option("--N", sa.n, "Curve degree")->required();
  simulate->add_option("--r", sa.r, "Sobolev order (0 = L2)");
  simulate->add_option("--samples", sa.samples, "Number of curve pairs")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sa.seed, "Master seed");
  simulate->add_option("--workers", sa.workers, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--distribution", sa.distribution, "uniform | maxnorm:k");
  simulate->add_option("--seg-target", sa.seg_target, "Polyline chord length (0 = auto)")->check(CLI::NonNegativeNumber);
  simulate->add_option("--newton-tol", sa.newton_tol, "Newton step tolerance")->check(CLI::PositiveNumber);
  simulate->add_option("--csv", sa.csv, "Write per-sample CSV here");
  simulate->add_option("--out", sa.out, "Summary JSON file (default stdout)");

  VerifyArgs va;
  va.workers = default_workers();
  auto* verify = app.add_subcommand("verify", "Reproduce the derivation chain numerically");
  verify->add_option("--N", va.degrees, "Degree or range A..B (1..8)");
  verify->add_option("--samples", va.samples, "Fibre Monte Carlo attempts (0 skips)");
  verify->add_option("--seed", va.seed, "Master seed");
  verify->add_option("--workers", va.workers, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--out", va.out, "Report JSON file (default: after the table)");

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Count intersections of two curve files");
  count->add_option("curve_f", ca.file_f, "First curve JSON")->required();
  count->add_option("curve_g", ca.file_g, "Second curve JSON")->required();
  count->add_option("--seg-target", ca.seg_target, "Polyline chord length (0 = auto)")->check(CLI::NonNegativeNumber);
  count->add_option("--newton-tol", ca.newton_tol, "Newton step tolerance")->check(CLI::PositiveNumber);
  count->add_option("--out", ca.out, "Output file (default stdout)");

  SampleArgs pa;
  auto* sample = app.add_subcommand("sample", "Write uniform unit-ball curves as JSON");
  sample->add_option("--N", pa.n, "Curve degree")->required();
  sample->add_option("--r", pa.r, "Sobolev order (0 = L2)");
  sample->add_option("--count", pa.count, "Number of curves");
  sample->add_option("--seed", pa.seed, "Master seed");
  sample->add_option("--out", pa.out, "Output directory");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("curvecross");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*exact) return cmd_exact(ea, out);
    if (*simulate) return cmd_simulate(sa, out);
    if (*verify) return cmd_verify(va, out);
    if (*count) return cmd_count(ca, out);
    if (*sample) return cmd_sample(pa, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsageError;
}

}  // namespace curvecross::cli
