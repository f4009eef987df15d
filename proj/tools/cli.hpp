#pragma once

// The quadmod command line. run() parses an argument vector, executes one
// subcommand and returns what would be printed plus the exit code:
//   0 ok, 1 usage, 2 numeric failure, 3 verification suite failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "canonical_json.hpp"
#include "quadmod/quadmod.hpp"

namespace quadmod::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2, kSuiteFailure = 3 };

struct Outcome {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Parses "x1,x2,...,xn" with exactly n finite-or-not numbers, locale independent.
inline std::optional<std::vector<double>> parse_numbers(std::string_view text, std::size_t n) {
  std::vector<double> values;
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    double x = 0.0;
    if (p < end && *p == '+') ++p;
    const auto [next, ec] = std::from_chars(p, end, x);
    if (ec == std::errc::result_out_of_range) {
      x = (p < end && *p == '-') ? -HUGE_VAL : HUGE_VAL;
    } else if (ec != std::errc{}) {
      return std::nullopt;
    }
    values.push_back(x);
    p = next;
    if (p == end) break;
    if (*p != ',') return std::nullopt;
    ++p;
  }
  if (values.size() != n) return std::nullopt;
  return values;
}

inline std::optional<Complex> parse_complex(std::string_view text) {
  const auto v = parse_numbers(text, 2);
  if (!v) return std::nullopt;
  return Complex((*v)[0], (*v)[1]);
}

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex_flag(Complex z) { return format_number(z.real()) + "," + format_number(z.imag()); }

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json certificate_json(const EscapeCertificate& c) {
  Json j;
  j["kind"] = c.kind == CertificateKind::LargeParameter ? "large_b" : "half_plane";
  j["b"] = complex_json(c.b);
  j["z"] = complex_json(c.z);
  j["re_z_over_b"] = c.re_z_over_b;
  j["threshold"] = c.threshold;
  j["step_gain"] = c.step_gain;
  j["abs_z"] = c.abs_z;
  j["image_abs"] = c.image_abs;
  return j;
}

inline Json window_json(const Window& w) {
  Json j;
  j["center"] = complex_json(w.center);
  j["width"] = w.width;
  j["height"] = w.height;
  j["pixels_wide"] = w.pixels_wide;
  j["pixels_high"] = w.pixels_high;
  return j;
}

/// Description of the map rendered in dynamical mode.
struct DynamicalForm {
  std::optional<Complex> lambda1;
  std::optional<Complex> lambda2;
  std::optional<Complex> b;
  std::optional<double> symmetric_r;

  friend bool operator==(const DynamicalForm&, const DynamicalForm&) = default;
};

inline Json job_json(const RasterJob& job, const DynamicalForm& form) {
  Json j;
  j["mode"] = job.mode == RasterMode::Parameter ? "parameter" : "dynamical";
  j["window"] = window_json(job.window);
  j["tiers"] = job.tiers.to_string();
  j["budget"] = job.budget;
  j["tol"] = job.tol;
  j["tile"] = job.tile;
  j["palette"] = job.palette;
  if (job.mode == RasterMode::Dynamical) {
    Json f = Json::object();
    if (form.lambda1) f["lambda1"] = complex_json(*form.lambda1);
    if (form.lambda2) f["lambda2"] = complex_json(*form.lambda2);
    if (form.b) f["b"] = complex_json(*form.b);
    if (form.symmetric_r) f["symmetric_r"] = *form.symmetric_r;
    j["form"] = f;
  }
  return j;
}

/// The raster flags that reproduce `job` exactly.
inline std::vector<std::string> job_to_args(const RasterJob& job, const DynamicalForm& form = {}) {
  const Window& w = job.window;
  std::vector<std::string> args = {
      "raster",
      "--mode", job.mode == RasterMode::Parameter ? "parameter" : "dynamical",
      "--window", format_complex_flag(w.center) + "," + format_number(w.width) + "," + format_number(w.height),
      "--res", std::to_string(w.pixels_wide) + "," + std::to_string(w.pixels_high),
      "--budget", std::to_string(job.budget),
      "--tol", format_number(job.tol),
      "--tiers", job.tiers.to_string(),
      "--tile", std::to_string(job.tile),
      "--palette", job.palette,
  };
  if (form.lambda1) args.insert(args.end(), {"--l1", format_complex_flag(*form.lambda1)});
  if (form.lambda2) args.insert(args.end(), {"--l2", format_complex_flag(*form.lambda2)});
  if (form.b) args.insert(args.end(), {"--b", format_complex_flag(*form.b)});
  if (form.symmetric_r) args.insert(args.end(), {"--symmetric-r", format_number(*form.symmetric_r)});
  return args;
}

inline MapForm build_dynamical_form(const DynamicalForm& f) {
  if (f.b) {
    if (f.lambda1 || f.lambda2 || f.symmetric_r) {
      throw CLI::ValidationError("--b", "cannot be combined with --l1/--l2/--symmetric-r");
    }
    return MapForm::per_one(*f.b);
  }
  if (!f.lambda1 || !f.lambda2) throw CLI::ValidationError("dynamical mode", "needs --l1 and --l2, or --b");
  if (f.symmetric_r) return mobius_conjugate_symmetric({*f.lambda1, *f.lambda2}, *f.symmetric_r);
  return MapForm::lambda(*f.lambda1, *f.lambda2);
}

inline bool write_file(const std::string& path, const void* data, std::size_t size) {
  std::ofstream os(path, std::ios::binary);
  if (!os) return false;
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  return static_cast<bool>(os);
}

inline bool write_text(const std::string& path, const std::string& text) {
  return write_file(path, text.data(), text.size());
}

/// Parsed state of every subcommand; filled by CLI11 callbacks.
struct Invocation {
  // classify
  std::string lambda_flag, l1_flag, l2_flag;
  std::string tiers = TierPolicy{}.to_string();
  std::size_t budget = kDefaultBudget;
  double tol = kDefaultTol;
  // twist
  std::string target_flag;
  std::int64_t k1 = 0, k2 = 0;
  std::size_t n_max = 10000;
  bool geometric = false;
  std::string output;
  // raster
  std::string mode = "parameter";
  std::string window = "1,0,20,20";
  std::string res = "400,400";
  std::size_t raster_budget = 10000;
  std::size_t tile = 64;
  unsigned threads = 0;
  std::string palette = "default";
  std::string b_flag;
  std::optional<double> symmetric_r;
  // verify
  std::string suite;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  std::optional<std::size_t> verify_budget;
};

inline Complex require_complex(const std::string& flag, const std::string& text) {
  const auto z = parse_complex(text);
  if (!z) throw CLI::ValidationError(flag, "expected re,im but got '" + text + "'");
  return *z;
}

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw NumericFailure(std::string("non-finite ") + what);
}

inline Outcome cmd_classify(const Invocation& inv) {
  const bool per1 = !inv.lambda_flag.empty();
  const bool pair = !inv.l1_flag.empty() || !inv.l2_flag.empty();
  if (per1 == pair || (pair && (inv.l1_flag.empty() || inv.l2_flag.empty()))) {
    return {kUsage, "", "classify: give exactly one of --lambda or --l1 with --l2\n"};
  }
  const TierPolicy policy = TierPolicy::parse(inv.tiers);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "classify";
  Verdict verdict;
  RegionLabel region;
  if (per1) {
    const Complex lambda = require_complex("--lambda", inv.lambda_flag);
    require_finite(lambda, "lambda");
    j["input"] = {{"form", "per1"}, {"lambda", complex_json(lambda)}};
    region = region_membership(EigenvalueTriple{1.0, 1.0, lambda});
    verdict = connectivity_per1(lambda, policy, inv.budget, inv.tol);
  } else {
    const Complex l1 = require_complex("--l1", inv.l1_flag);
    const Complex l2 = require_complex("--l2", inv.l2_flag);
    require_finite(l1, "l1");
    require_finite(l2, "l2");
    j["input"] = {{"form", "lambda"}, {"lambda1", complex_json(l1)}, {"lambda2", complex_json(l2)}};
    region = region_membership(LambdaForm{l1, l2});
    verdict = connectivity_lambda_form({l1, l2}, policy, inv.budget, inv.tol);
  }
  j["region"] = to_string(region.region);
  j["region_ambiguous"] = region.ambiguous;
  j["verdict"] = to_string(verdict.connectivity);
  j["tier"] = to_string(verdict.tier);
  j["rule"] = to_string(verdict.rule);
  j["steps"] = verdict.steps;
  Json certs = Json::array();
  for (const auto& c : verdict.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = certs;
  j["note"] = verdict.note;
  return {kOk, to_canonical(j), ""};
}

inline std::string csv_row(const std::string& n, const EigenvalueTriple& t, double error, double residual) {
  std::string row = n;
  for (Complex z : t.values()) row += "," + format_double(z.real()) + "," + format_double(z.imag());
  row += "," + format_double(error) + "," + format_double(residual) + "\r\n";
  return row;
}

inline Outcome cmd_twist(const Invocation& inv) {
  const bool target = !inv.target_flag.empty();
  const bool pair = !inv.l1_flag.empty() || !inv.l2_flag.empty();
  if (target == pair || (pair && (inv.l1_flag.empty() || inv.l2_flag.empty()))) {
    return {kUsage, "", "twist: give exactly one of --target-lambda or --l1 with --l2\n"};
  }
  TwistPlan plan;
  try {
    if (target) {
      const Complex lambda = require_complex("--target-lambda", inv.target_flag);
      require_finite(lambda, "target lambda");
      plan = inverse_twist(lambda);
    } else {
      const Complex l1 = require_complex("--l1", inv.l1_flag);
      const Complex l2 = require_complex("--l2", inv.l2_flag);
      require_finite(l1, "l1");
      require_finite(l2, "l2");
      plan = plan_from_multipliers(l1, l2, inv.k1, inv.k2);
    }
  } catch (const Error& e) {
    return {kUsage, "", std::string("twist: ") + e.what() + "\n"};
  }

  std::vector<std::size_t> ns;
  if (inv.geometric) {
    ns = geometric_grid(inv.n_max);
  } else {
    for (std::size_t n = 1; n <= inv.n_max; ++n) ns.push_back(n);
  }
  const ModuliPoint limit = sigma_coordinates({1.0, 1.0, plan.limit_lambda});
  std::string csv = "n,re_lambda1,im_lambda1,re_lambda2,im_lambda2,re_lambda3,im_lambda3,error,sum_residual\r\n";
  for (std::size_t n : ns) {
    const TwistState s = twist_state(plan, n);
    for (Complex z : s.triple.values()) require_finite(z, "multiplier");
    const double error = moduli_distance(sigma_coordinates(s.triple), limit);
    csv += csv_row(std::to_string(n), s.triple, error, twist_sum_residual(plan, s));
  }
  csv += csv_row("limit", {1.0, 1.0, plan.limit_lambda}, 0.0, 0.0);

  if (inv.output.empty() || inv.output == "-") return {kOk, csv, ""};
  if (!write_text(inv.output, csv)) return {kUsage, "", "twist: cannot write " + inv.output + "\n"};
  return {kOk, "", ""};
}

inline Outcome cmd_raster(const Invocation& inv, RasterJob* parsed_job = nullptr, DynamicalForm* parsed_form = nullptr) {
  RasterJob job;
  if (inv.mode == "parameter") job.mode = RasterMode::Parameter;
  else if (inv.mode == "dynamical") job.mode = RasterMode::Dynamical;
  else return {kUsage, "", "raster: --mode must be parameter or dynamical\n"};

  const auto win = parse_numbers(inv.window, 4);
  if (!win || !((*win)[2] > 0.0) || !((*win)[3] > 0.0)) {
    return {kUsage, "", "raster: --window expects center_re,center_im,width,height with positive size\n"};
  }
  const auto res = parse_numbers(inv.res, 2);
  if (!res || !((*res)[0] >= 1.0) || !((*res)[1] >= 1.0) || (*res)[0] != std::floor((*res)[0]) ||
      (*res)[1] != std::floor((*res)[1])) {
    return {kUsage, "", "raster: --res expects W,H positive integers\n"};
  }
  job.window = {{(*win)[0], (*win)[1]}, (*win)[2], (*win)[3], static_cast<std::size_t>((*res)[0]),
                static_cast<std::size_t>((*res)[1])};
  job.tiers = TierPolicy::parse(inv.tiers);
  job.budget = inv.raster_budget;
  job.tol = inv.tol;
  job.tile = inv.tile;
  job.palette = inv.palette;

  DynamicalForm form;
  if (!inv.l1_flag.empty()) form.lambda1 = require_complex("--l1", inv.l1_flag);
  if (!inv.l2_flag.empty()) form.lambda2 = require_complex("--l2", inv.l2_flag);
  if (!inv.b_flag.empty()) form.b = require_complex("--b", inv.b_flag);
  form.symmetric_r = inv.symmetric_r;
  if (parsed_job) *parsed_job = job;
  if (parsed_form) *parsed_form = form;
  if (inv.output.empty()) return {kUsage, "", "raster: -o is required\n"};

  const unsigned threads = resolve_thread_count(inv.threads);
  const auto start = std::chrono::steady_clock::now();
  ImageBuffer image;
  try {
    if (job.mode == RasterMode::Parameter) {
      image = raster_parameter_plane(job, threads);
    } else {
      image = raster_dynamical_plane(job, build_dynamical_form(form), threads);
    }
  } catch (const Error& e) {
    return {kUsage, "", std::string("raster: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kUsage, "", std::string("raster: ") + e.what() + "\n"};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto ppm = encode_ppm(image);
  if (!write_file(inv.output, ppm.data(), ppm.size())) {
    return {kUsage, "", "raster: cannot write " + inv.output + "\n"};
  }
  Json side;
  side["schema_version"] = kSchemaVersion;
  side["job"] = job_json(job, form);
  Json counts;
  for (std::size_t c = 0; c < kPixelClassCount; ++c) {
    counts[std::string(to_string(static_cast<PixelClass>(c)))] = image.tally[c];
  }
  side["counts"] = counts;
  side["threads"] = threads;
  side["wall_time_s"] = seconds;
  if (!write_text(inv.output + ".json", to_canonical(side))) {
    return {kUsage, "", "raster: cannot write " + inv.output + ".json\n"};
  }
  return {kOk, "", ""};
}

inline std::size_t default_samples(const std::string& suite) {
  if (suite == "repelling" || suite == "identity") return 100000;
  if (suite == "twist") return 100;
  if (suite == "bound") return 10000;
  return 1000;
}

inline std::optional<SuiteResult> run_suite(const std::string& suite, std::size_t samples, std::uint64_t seed,
                                            unsigned threads, std::optional<std::size_t> budget) {
  const std::size_t b = budget.value_or(kDefaultBudget);
  if (suite == "repelling") return verify_repelling_suite(samples, seed, threads);
  if (suite == "twist") return verify_twist_suite(samples, seed);
  if (suite == "bound") return verify_bound_suite(samples, seed);
  if (suite == "b2") return verify_b2_suite(samples, seed, b);
  if (suite == "identity") return verify_identity_suite(samples, samples / 10, seed);
  if (suite == "oracle") return verify_multiplier_oracle_suite(samples, seed);
  if (suite == "central") return verify_central_suite(samples, seed);
  if (suite == "external") return verify_external_bound_suite(samples, seed, b);
  return std::nullopt;
}

inline Outcome cmd_verify(const Invocation& inv) {
  const std::size_t samples = inv.samples.value_or(default_samples(inv.suite));
  if (samples == 0) return {kUsage, "", "verify: --samples must be positive\n"};
  const auto result = run_suite(inv.suite, samples, inv.seed, resolve_thread_count(inv.threads), inv.verify_budget);
  if (!result) return {kUsage, "", "verify: unknown suite '" + inv.suite + "'\n"};
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "verify";
  j["suite"] = result->suite;
  j["seed"] = inv.seed;
  j["samples"] = samples;
  j["pass"] = result->pass;
  Json stats = Json::object();
  for (const auto& [k, v] : result->stats) stats[k] = v;
  j["stats"] = stats;
  j["counterexample"] = result->counterexample ? Json(*result->counterexample) : Json(nullptr);
  return {result->pass ? kOk : kSuiteFailure, to_canonical(j), ""};
}

inline Outcome run(const std::vector<std::string>& args, RasterJob* parsed_job = nullptr,
                   DynamicalForm* parsed_form = nullptr) {
  Invocation inv;
  CLI::App app{"Moduli of quadratic rational maps: classification, twist limits, rasters", "quadmod"};
  app.require_subcommand(1);

  auto* classify = app.add_subcommand("classify", "Region and Julia-set connectivity of one class (JSON to stdout)");
  classify->add_option("--lambda", inv.lambda_flag, "Per_1(1) class f_{1,lambda}, as re,im");
  classify->add_option("--l1", inv.l1_flag, "first multiplier of f_{l1,l2}, as re,im");
  classify->add_option("--l2", inv.l2_flag, "second multiplier of f_{l1,l2}, as re,im");
  classify->add_option("--tiers", inv.tiers, "subset of t1,t2,t3,t4,t5,numeric")->capture_default_str();
  classify->add_option("--budget", inv.budget, "iteration budget per critical orbit")->capture_default_str();
  classify->add_option("--tol", inv.tol, "cycle detection tolerance (chordal)")->capture_default_str();

  auto* twist = app.add_subcommand("twist", "Twist-sequence multipliers and limit error (CSV)");
  twist->add_option("--l1", inv.l1_flag, "attracting multiplier lambda1, as re,im");
  twist->add_option("--l2", inv.l2_flag, "attracting multiplier lambda2, as re,im");
  twist->add_option("--k1", inv.k1, "logarithm branch for lambda1")->capture_default_str();
  twist->add_option("--k2", inv.k2, "logarithm branch for lambda2")->capture_default_str();
  twist->add_option("--target-lambda", inv.target_flag, "limit class f_{1,lambda} with Re lambda > 1, as re,im");
  twist->add_option("--n-max", inv.n_max, "largest n tabulated")->capture_default_str();
  twist->add_flag("--geometric", inv.geometric, "tabulate n = 1, 2, 4, ... instead of every n");
  twist->add_option("-o,--output", inv.output, "CSV path (stdout when omitted)");

  auto* raster = app.add_subcommand("raster", "Render the parameter plane or a dynamical plane (PPM + sidecar JSON)");
  raster->add_option("--mode", inv.mode, "parameter | dynamical")->capture_default_str();
  raster->add_option("--window", inv.window, "center_re,center_im,width,height")->capture_default_str();
  raster->add_option("--res", inv.res, "W,H in pixels")->capture_default_str();
  raster->add_option("--budget", inv.raster_budget, "iteration budget per orbit")->capture_default_str();
  raster->add_option("--tol", inv.tol, "cycle detection tolerance (chordal)")->capture_default_str();
  raster->add_option("--tiers", inv.tiers, "subset of t1,t2,t3,t4,t5,numeric")->capture_default_str();
  raster->add_option("--tile", inv.tile, "tile edge in pixels")->capture_default_str();
  raster->add_option("--threads", inv.threads, "worker threads (default QUADMOD_THREADS, else all cores)");
  raster->add_option("--palette", inv.palette, "color scheme id")->capture_default_str();
  raster->add_option("--l1", inv.l1_flag, "dynamical mode: lambda1 of f_{l1,l2}, as re,im");
  raster->add_option("--l2", inv.l2_flag, "dynamical mode: lambda2 of f_{l1,l2}, as re,im");
  raster->add_option("--b", inv.b_flag, "dynamical mode: B of z + B + 1/z, as re,im");
  raster->add_option("--symmetric-r", inv.symmetric_r,
                     "dynamical mode: conjugate f_{l1,l2} so its fixed points sit at -r, -1/r, 1");
  raster->add_option("-o,--output", inv.output, "PPM path; the sidecar goes to <path>.json");

  auto* verify = app.add_subcommand("verify", "Run a verification battery (JSON; exit 3 on failure)");
  verify->add_option("--suite", inv.suite, "repelling | twist | bound | b2 | identity | oracle | central | external")
      ->required();
  verify->add_option("--samples", inv.samples, "sample count (suite-specific default)");
  verify->add_option("--seed", inv.seed, "64-bit seed")->capture_default_str();
  verify->add_option("--threads", inv.threads, "worker threads (default QUADMOD_THREADS, else all cores)");
  verify->add_option("--budget", inv.verify_budget, "iteration budget for b2 and external");

  std::vector<const char*> argv{"quadmod"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    return {code == 0 ? kOk : kUsage, out.str(), err.str()};
  }

  try {
    if (*classify) return cmd_classify(inv);
    if (*twist) return cmd_twist(inv);
    if (*raster) return cmd_raster(inv, parsed_job, parsed_form);
    return cmd_verify(inv);
  } catch (const CLI::Error& e) {
    return {kUsage, "", std::string(e.what()) + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kUsage, "", std::string(e.what()) + "\n"};
  } catch (const NumericFailure& e) {
    return {kNumeric, "", std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return {kUsage, "", std::string(e.what()) + "\n"};
  }
}

}  // namespace quadmod::cli
