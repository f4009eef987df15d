#pragma once

// Randomized verification batteries. Each draws its samples from CounterRng
// keyed by (seed, index), so a battery is a pure function of its arguments.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/classify.hpp"
#include "quadmod/dynamics.hpp"
#include "quadmod/moduli.hpp"
#include "quadmod/sampling.hpp"
#include "quadmod/twist.hpp"

namespace quadmod {

struct SuiteResult {
  explicit SuiteResult(std::string name) : suite(std::move(name)) {}

  std::string suite;
  bool pass = true;
  std::vector<std::pair<std::string, double>> stats;
  std::optional<std::string> counterexample;

  void stat(std::string key, double value) { stats.emplace_back(std::move(key), value); }

  void fail(const std::string& what) {
    if (!counterexample) counterexample = what;
    pass = false;
  }

  double get(const std::string& key) const {
    for (const auto& [k, v] : stats) {
      if (k == key) return v;
    }
    return std::nan("");
  }
};

namespace detail {

inline std::string fmt_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", z.real(), z.imag());
  return buf;
}

}  // namespace detail

/// Fixed point relation on bidisk pairs and sigma3 = sigma1 - 2 on computed multipliers.
inline SuiteResult verify_identity_suite(std::size_t pairs, std::size_t forms, std::uint64_t seed) {
  SuiteResult r{"identity"};
  double worst_relation = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    CounterRng rng(seed, i);
    const Complex l1 = rng.in_disk();
    const Complex l2 = rng.in_disk();
    if (!accept_bidisk_pair(l1, l2)) continue;
    const double res = fixed_point_relation_residual({l1, l2, lambda3_from_eq1(l1, l2)});
    worst_relation = std::max(worst_relation, res);
    if (!(res < 1e-12)) r.fail("relation residual " + std::to_string(res) + " at " + detail::fmt_complex(l1) + ", " + detail::fmt_complex(l2));
  }
  double worst_sigma = 0.0;
  for (std::size_t i = 0; i < forms; ++i) {
    CounterRng rng(seed ^ 0x5157ULL, i);
    MapForm form = MapForm::per_one(0.0);
    if (i % 2 == 0) {
      Complex l1, l2;
      do {
        l1 = rng.in_disk(3.0);
        l2 = rng.in_disk(3.0);
      } while (std::abs(1.0 - l1 * l2) < 1e-3 || std::abs(1.0 - l1) < 1e-3 || std::abs(1.0 - l2) < 1e-3);
      form = MapForm::lambda(l1, l2);
    } else {
      form = MapForm::per_one(rng.in_disk(5.0));
    }
    const double res = sigma_identity_residual(eigenvalue_triple(form));
    worst_sigma = std::max(worst_sigma, res);
    if (!(res < 1e-9)) r.fail("sigma residual " + std::to_string(res) + " at sample " + std::to_string(i));
  }
  r.stat("pairs", static_cast<double>(pairs));
  r.stat("forms", static_cast<double>(forms));
  r.stat("max_relation_residual", worst_relation);
  r.stat("max_sigma_residual", worst_sigma);
  return r;
}

/// Re lambda3 > 1 over the bidisk.
inline SuiteResult verify_repelling_suite(std::size_t samples, std::uint64_t seed, unsigned threads = 1) {
  SuiteResult r{"repelling"};
  const RepellingReport rep = verify_repelling(samples, seed, threads);
  r.stat("samples", static_cast<double>(rep.samples));
  r.stat("evaluated", static_cast<double>(rep.evaluated));
  r.stat("rejected", static_cast<double>(rep.rejected));
  r.stat("violations", static_cast<double>(rep.violations));
  r.stat("min_re_lambda3", rep.min_re_lambda3);
  if (rep.violations != 0 || !(rep.min_re_lambda3 > 1.0)) {
    r.fail("Re lambda3 = " + std::to_string(rep.min_re_lambda3) + " at " + detail::fmt_complex(rep.argmin_lambda1) +
           ", " + detail::fmt_complex(rep.argmin_lambda2));
  }
  return r;
}

/// Multipliers of z + B + 1/z by differentiation against {1, 1 - B^2}.
inline SuiteResult verify_multiplier_oracle_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult r{"oracle"};
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    Complex b;
    do b = rng.in_disk(4.0);
    while (std::abs(b) < 1e-3);
    const auto fps = fixed_points_and_multipliers(MapForm::per_one(b));
    double err = 0.0;
    if (fps.size() != 2 || fps[0].multiplicity != 2 || !fps[0].point.is_infinity()) {
      err = INFINITY;
    } else {
      err = std::max(std::abs(fps[0].multiplier - 1.0), std::abs(fps[1].multiplier - (1.0 - b * b)));
    }
    worst = std::max(worst, err);
    if (!(err <= 1e-10)) r.fail("B = " + detail::fmt_complex(b));
  }
  r.stat("samples", static_cast<double>(samples));
  r.stat("max_error", worst);
  return r;
}

/// Random twist plans: sum conservation, containment in H, limit law, rate, inverse round trip.
inline SuiteResult verify_twist_suite(std::size_t plans, std::uint64_t seed) {
  SuiteResult r{"twist"};
  const std::vector<std::size_t> grid = geometric_grid(1000000);
  double worst_sum = 0.0;
  double worst_limit = 0.0;
  double worst_roundtrip = 0.0;
  double ratio_min = INFINITY;
  double ratio_max = -INFINITY;
  std::size_t containment_failures = 0;
  for (std::size_t i = 0; i < plans; ++i) {
    CounterRng rng(seed, i);
    const Complex w1(rng.uniform(-3.0, -0.1), rng.uniform(-kPi, kPi));
    const Complex w2(rng.uniform(-3.0, -0.1), rng.uniform(-kPi, kPi));
    const TwistPlan plan = make_twist_plan(w1, w2);
    const std::string tag = "plan " + std::to_string(i) + " w=" + detail::fmt_complex(w1) + "," + detail::fmt_complex(w2);

    std::vector<std::size_t> ns = grid;
    ns.insert(ns.begin(), 0);
    for (std::size_t n : ns) {
      const TwistState s = twist_state(plan, n);
      const double res = twist_sum_residual(plan, s);
      worst_sum = std::max(worst_sum, res);
      if (!(res < 1e-12)) r.fail(tag + ": sum residual " + std::to_string(res) + " at n=" + std::to_string(n));
      const RegionLabel label = region_membership(s.triple);
      if (label.region != Region::H) {
        ++containment_failures;
        r.fail(tag + ": state outside H at n=" + std::to_string(n));
      }
    }

    const double scale = 1.0 + std::abs(plan.limit_lambda);
    const double e4 = twist_limit_error(plan, 10000);
    worst_limit = std::max(worst_limit, e4 / scale);
    if (!(e4 < 1e-2 * scale)) r.fail(tag + ": limit error " + std::to_string(e4));

    for (std::size_t n : {1000u, 2000u, 4000u}) {
      const double ratio = twist_limit_error(plan, 2 * n) / twist_limit_error(plan, n);
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
      if (!(ratio >= 0.4 && ratio <= 0.6)) {
        r.fail(tag + ": rate ratio error(2n)/error(n) = " + std::to_string(ratio) + " at n=" + std::to_string(n));
      }
    }

    const TwistPlan inv = inverse_twist(plan.limit_lambda);
    const auto k1 = static_cast<std::int64_t>(std::lround(inv.omega1.imag() / (2.0 * kPi)));
    const auto k2 = static_cast<std::int64_t>(std::lround(inv.omega2.imag() / (2.0 * kPi)));
    const TwistPlan back = plan_from_multipliers(std::exp(inv.omega1), std::exp(inv.omega2), k1, k2);
    const double rt = std::abs(back.limit_lambda - plan.limit_lambda) / std::max(1.0, std::abs(plan.limit_lambda));
    worst_roundtrip = std::max(worst_roundtrip, rt);
    if (!(rt <= 1e-12)) r.fail(tag + ": inverse round trip error " + std::to_string(rt));
  }
  r.stat("plans", static_cast<double>(plans));
  r.stat("max_sum_residual", worst_sum);
  r.stat("containment_failures", static_cast<double>(containment_failures));
  r.stat("max_scaled_limit_error_n1e4", worst_limit);
  r.stat("rate_ratio_min", ratio_min);
  r.stat("rate_ratio_max", ratio_max);
  r.stat("max_roundtrip_error", worst_roundtrip);
  return r;
}

/// |lambda - 1| > 9 is certified Cantor; 3 < |B| <= 10 passes the large-B certificate.
inline SuiteResult verify_bound_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult r{"bound"};
  const TierPolicy only_t4 = TierPolicy::parse("t4");
  std::size_t certified = 0;
  std::size_t b_certified = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const Complex lambda = rng.in_annulus(1.0, 9.0, 40.0);
    const Verdict v = connectivity_per1(lambda, only_t4);
    if (v.connectivity == Connectivity::Cantor && v.tier == Tier::Certified) {
      ++certified;
    } else {
      r.fail("lambda = " + detail::fmt_complex(lambda) + " verdict " + std::string(to_string(v.connectivity)));
    }
    const Complex b = rng.in_annulus(0.0, 3.0, 10.0);
    if (escape_certificate_large_b(b, b + 2.0) && escape_certificate_large_b(b, b - 2.0)) {
      ++b_certified;
    } else {
      r.fail("B = " + detail::fmt_complex(b) + " critical values not certified");
    }
  }
  r.stat("samples", static_cast<double>(samples));
  r.stat("certified_cantor", static_cast<double>(certified));
  r.stat("certified_b", static_cast<double>(b_certified));
  return r;
}

/// Numeric-only classification of Re lambda in [1.5, 10], |Im lambda| <= 10:
/// every sample must be Cantor. The undetermined rate for Re lambda in (1, 1.5)
/// is reported without a threshold.
inline SuiteResult verify_b2_suite(std::size_t samples, std::uint64_t seed, std::size_t budget = kDefaultBudget) {
  SuiteResult r{"b2"};
  const TierPolicy policy = TierPolicy::numeric_only();
  std::array<std::size_t, 3> counts{};
  std::size_t certified = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const Complex lambda(rng.uniform(1.5, 10.0), rng.uniform(-10.0, 10.0));
    const Verdict v = connectivity_per1(lambda, policy, budget);
    ++counts[static_cast<std::size_t>(v.connectivity)];
    if (v.tier == Tier::Certified) ++certified;
    if (v.connectivity != Connectivity::Cantor) {
      r.fail("lambda = " + detail::fmt_complex(lambda) + " verdict " + std::string(to_string(v.connectivity)));
    }
  }
  std::size_t near_undetermined = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed ^ 0xb2b2ULL, i);
    double re;
    do re = rng.uniform(1.0, 1.5);
    while (re == 1.0);
    const Complex lambda(re, rng.uniform(-10.0, 10.0));
    if (connectivity_per1(lambda, policy, budget).connectivity == Connectivity::Undetermined) ++near_undetermined;
  }
  r.stat("samples", static_cast<double>(samples));
  r.stat("budget", static_cast<double>(budget));
  r.stat("connected", static_cast<double>(counts[0]));
  r.stat("cantor", static_cast<double>(counts[1]));
  r.stat("undetermined", static_cast<double>(counts[2]));
  r.stat("certified", static_cast<double>(certified));
  r.stat("near_boundary_undetermined_rate", samples ? static_cast<double>(near_undetermined) / static_cast<double>(samples) : 0.0);
  return r;
}

/// |lambda| <= 1, lambda != 1 is Connected by the non-repelling pair rule, and lambda = 1 is Connected.
inline SuiteResult verify_central_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult r{"central"};
  std::size_t connected = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    Complex lambda = (i % 4 == 3) ? std::polar(1.0, rng.uniform(0.0, 2.0 * kPi)) : rng.in_disk();
    if (near_one(lambda)) lambda = 0.0;
    const Verdict v = connectivity_per1(lambda);
    if (v.connectivity == Connectivity::Connected && v.rule == Rule::T2) {
      ++connected;
    } else {
      r.fail("lambda = " + detail::fmt_complex(lambda));
    }
  }
  const Verdict at_one = connectivity_per1(1.0);
  if (at_one.connectivity != Connectivity::Connected) r.fail("lambda = 1 not connected");
  r.stat("samples", static_cast<double>(samples));
  r.stat("connected_t2", static_cast<double>(connected));
  r.stat("lambda_one_connected", at_one.connectivity == Connectivity::Connected ? 1.0 : 0.0);
  return r;
}

/// Numeric tier on |lambda + 1| > 2, |lambda - 1| <= 9: no Connected verdicts.
inline SuiteResult verify_external_bound_suite(std::size_t samples, std::uint64_t seed,
                                               std::size_t budget = kDefaultBudget) {
  SuiteResult r{"external"};
  std::array<std::size_t, 3> counts{};
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    Complex lambda;
    do lambda = 1.0 + rng.in_disk(9.0);
    while (!(std::abs(lambda + 1.0) > 2.0));
    const Verdict v = connectivity_per1(lambda, TierPolicy::numeric_only(), budget);
    ++counts[static_cast<std::size_t>(v.connectivity)];
    if (v.connectivity == Connectivity::Connected) r.fail("lambda = " + detail::fmt_complex(lambda) + " connected");
  }
  r.stat("samples", static_cast<double>(samples));
  r.stat("connected", static_cast<double>(counts[0]));
  r.stat("cantor", static_cast<double>(counts[1]));
  r.stat("undetermined", static_cast<double>(counts[2]));
  return r;
}

}  // namespace quadmod
