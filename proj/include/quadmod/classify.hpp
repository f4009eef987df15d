#pragma once

// Region membership for the boundary pieces of the central hyperbolic
// component, and Julia-set connectivity for the Per_1(1) slice.

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadmod/complex.hpp"
#include "quadmod/dynamics.hpp"
#include "quadmod/error.hpp"
#include "quadmod/map_form.hpp"
#include "quadmod/moduli.hpp"
#include "quadmod/parallel.hpp"
#include "quadmod/sampling.hpp"

namespace quadmod {

inline constexpr double kBoundaryEps = 1e-9;

enum class Region {
  H,              // two multipliers in the open unit disk
  B0,             // (l1, l2) in closed disk x unit circle, l1, l2 != 1, l1 l2 != 1
  B1,             // (1, 1, l) with |l| <= 1, l != 1
  B2,             // (1, 1, l) with Re l > 1
  B2ClosureOnly,  // (1, 1, l) with Re l = 1, l != 1, and the class of z + 1/z
  Per1of1,        // the rest of Per_1(1)
  Exterior,
};

constexpr std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::H: return "H";
    case Region::B0: return "B0";
    case Region::B1: return "B1";
    case Region::B2: return "B2";
    case Region::B2ClosureOnly: return "B2closureOnly";
    case Region::Per1of1: return "Per1of1";
    case Region::Exterior: return "Exterior";
  }
  return "?";
}

/// `ambiguous` is set when some deciding quantity lay within `eps` of its
/// threshold without being on it; the label is then what strict comparison
/// gives, and callers must not treat it as settled.
struct RegionLabel {
  Region region = Region::Exterior;
  double eps = kBoundaryEps;
  bool ambiguous = false;
};

namespace detail {

// Values this close to a threshold are taken to be on it (rounding noise of
// quantities such as |exp(i theta)|).
inline constexpr double kOnThreshold = 8.0 * DBL_EPSILON;

enum class Side { Below, On, Above };

class ThresholdTest {
 public:
  explicit ThresholdTest(double eps) : eps_(eps) {}

  Side compare(double x, double threshold) {
    const double d = x - threshold;
    if (std::abs(d) <= kOnThreshold * std::max(1.0, std::abs(threshold))) return Side::On;
    if (std::abs(d) < eps_) ambiguous_ = true;
    return d < 0.0 ? Side::Below : Side::Above;
  }

  bool is_one(Complex z) {
    const double d = std::abs(z - 1.0);
    if (d <= kDegenerateTol) return true;
    if (d < eps_) ambiguous_ = true;
    return false;
  }

  void flag() { ambiguous_ = true; }
  bool ambiguous() const { return ambiguous_; }

 private:
  double eps_;
  bool ambiguous_ = false;
};

}  // namespace detail

inline RegionLabel region_membership(const EigenvalueTriple& triple, double eps = kBoundaryEps) {
  detail::ThresholdTest test(eps);
  const auto values = triple.values();
  std::array<bool, 3> one{};
  int ones = 0;
  for (int i = 0; i < 3; ++i) ones += (one[i] = test.is_one(values[i])) ? 1 : 0;

  auto label = [&](Region r) { return RegionLabel{r, eps, test.ambiguous()}; };

  if (ones > 0) {
    // A Per_1(1) class has multipliers (1, 1, l).
    Complex lambda = 1.0;
    if (ones == 2) {
      for (int i = 0; i < 3; ++i) {
        if (!one[i]) lambda = values[i];
      }
    } else if (ones == 1) {
      test.flag();
      lambda = values[0] + values[1] + values[2] - 2.0;
    }
    if (test.is_one(lambda)) return label(Region::B2ClosureOnly);
    if (test.compare(std::abs(lambda), 1.0) != detail::Side::Above) return label(Region::B1);
    switch (test.compare(lambda.real(), 1.0)) {
      case detail::Side::Above: return label(Region::B2);
      case detail::Side::On: return label(Region::B2ClosureOnly);
      case detail::Side::Below: return label(Region::Per1of1);
    }
  }

  std::array<detail::Side, 3> side{};
  int inside = 0;
  for (int i = 0; i < 3; ++i) {
    side[i] = test.compare(std::abs(values[i]), 1.0);
    if (side[i] == detail::Side::Below) ++inside;
  }
  if (inside >= 2) return label(Region::H);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j || side[i] == detail::Side::Above || side[j] != detail::Side::On) continue;
      if (!test.is_one(values[i] * values[j])) return label(Region::B0);
    }
  }
  return label(Region::Exterior);
}

/// Region of the class of (l1 z + z^2)/(l2 z + 1).
inline RegionLabel region_membership(const LambdaForm& form, double eps = kBoundaryEps) {
  static_cast<void>(MapForm::lambda(form.lambda1, form.lambda2));
  if (near_one(form.lambda1)) return region_membership(EigenvalueTriple{1.0, 1.0, form.lambda2}, eps);
  if (near_one(form.lambda2)) return region_membership(EigenvalueTriple{1.0, 1.0, form.lambda1}, eps);
  return region_membership(
      EigenvalueTriple{form.lambda1, form.lambda2, lambda3_from_eq1(form.lambda1, form.lambda2)}, eps);
}

/// Whether the class lies on the boundary of H (B0, B1 or the closure of B2).
/// Empty when the membership test was ambiguous.
template <typename Input>
std::optional<bool> boundary_of_h(const Input& input, double eps = kBoundaryEps) {
  const RegionLabel label = region_membership(input, eps);
  if (label.ambiguous) return std::nullopt;
  switch (label.region) {
    case Region::B0:
    case Region::B1:
    case Region::B2:
    case Region::B2ClosureOnly: return true;
    default: return false;
  }
}

enum class Connectivity { Connected, Cantor, Undetermined };

enum class Tier { TheoremShortcut, ExternalTheorem, Certified, Numeric, None };

enum class Rule {
  T1,       // the class of z + 1/z
  T2,       // |l| <= 1: two distinct non-repelling fixed points
  T3,       // Re l > 1
  T4,       // |l - 1| > 9, certified escape of both critical values
  T5,       // |l + 1| > 2, cited external bound
  Numeric,  // critical orbit iteration
  Quasicircle,  // class in H
  None,
};

constexpr std::string_view to_string(Connectivity c) noexcept {
  switch (c) {
    case Connectivity::Connected: return "connected";
    case Connectivity::Cantor: return "cantor";
    case Connectivity::Undetermined: return "undetermined";
  }
  return "?";
}

constexpr std::string_view to_string(Tier t) noexcept {
  switch (t) {
    case Tier::TheoremShortcut: return "theorem";
    case Tier::ExternalTheorem: return "external";
    case Tier::Certified: return "certified";
    case Tier::Numeric: return "numeric";
    case Tier::None: return "none";
  }
  return "?";
}

constexpr std::string_view to_string(Rule r) noexcept {
  switch (r) {
    case Rule::T1: return "t1";
    case Rule::T2: return "t2";
    case Rule::T3: return "t3";
    case Rule::T4: return "t4";
    case Rule::T5: return "t5";
    case Rule::Numeric: return "numeric";
    case Rule::Quasicircle: return "h";
    case Rule::None: return "none";
  }
  return "?";
}

/// Which rungs of the connectivity ladder may be used.
struct TierPolicy {
  bool t1 = true;
  bool t2 = true;
  bool t3 = true;
  bool t4 = true;
  bool t5 = false;
  bool numeric = true;

  static TierPolicy numeric_only() { return {false, false, false, false, false, true}; }

  /// Parses a comma separated subset of t1,t2,t3,t4,t5,numeric.
  static TierPolicy parse(std::string_view list) {
    TierPolicy p{false, false, false, false, false, false};
    while (!list.empty()) {
      const auto comma = list.find(',');
      const std::string_view item = list.substr(0, comma);
      if (item == "t1") p.t1 = true;
      else if (item == "t2") p.t2 = true;
      else if (item == "t3") p.t3 = true;
      else if (item == "t4") p.t4 = true;
      else if (item == "t5") p.t5 = true;
      else if (item == "numeric") p.numeric = true;
      else if (!item.empty()) throw std::invalid_argument("unknown tier '" + std::string(item) + "'");
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    return p;
  }

  std::string to_string() const {
    std::string out;
    auto add = [&out](bool on, const char* name) {
      if (!on) return;
      if (!out.empty()) out += ',';
      out += name;
    };
    add(t1, "t1");
    add(t2, "t2");
    add(t3, "t3");
    add(t4, "t4");
    add(t5, "t5");
    add(numeric, "numeric");
    return out;
  }

  friend bool operator==(const TierPolicy&, const TierPolicy&) = default;
};

struct Verdict {
  Connectivity connectivity = Connectivity::Undetermined;
  Tier tier = Tier::None;
  Rule rule = Rule::None;
  std::size_t steps = 0;
  std::vector<EscapeCertificate> certificates;
  std::vector<Fate> critical_fates;
  std::string note;
};

/// Connectivity of J for the class f_{1, lambda}, i.e. z + B + 1/z with B^2 = 1 - lambda.
inline Verdict connectivity_per1(Complex lambda, const TierPolicy& policy = {}, std::size_t budget = kDefaultBudget,
                                 double tol = kDefaultTol) {
  Verdict v;
  if (!is_finite(lambda)) {
    v.note = "non-finite parameter";
    return v;
  }
  if (policy.t1 && near_one(lambda)) {
    return {Connectivity::Connected, Tier::TheoremShortcut, Rule::T1, 0, {}, {}, "[R]"};
  }
  if (policy.t2 && std::abs(lambda) <= 1.0 + detail::kOnThreshold && !near_one(lambda)) {
    return {Connectivity::Connected, Tier::TheoremShortcut, Rule::T2, 0, {}, {}, "two non-repelling fixed points"};
  }
  if (policy.t3 && lambda.real() > 1.0) {
    return {Connectivity::Cantor, Tier::TheoremShortcut, Rule::T3, 0, {}, {}, "Re lambda > 1"};
  }
  const Complex b = per1_parameter(lambda);
  if (policy.t4 && std::abs(lambda - 1.0) > 9.0) {
    auto plus = escape_certificate_large_b(b, b + 2.0);
    auto minus = escape_certificate_large_b(b, b - 2.0);
    if (plus && minus) {
      return {Connectivity::Cantor, Tier::Certified, Rule::T4, 0, {*plus, *minus}, {}, "|lambda - 1| > 9"};
    }
  }
  if (policy.t5 && std::abs(lambda + 1.0) > 2.0) {
    return {Connectivity::Cantor, Tier::ExternalTheorem, Rule::T5, 0, {}, {}, "|lambda + 1| > 2"};
  }
  if (!policy.numeric) return v;

  const MapForm form = MapForm::per_one(b);
  v.rule = Rule::Numeric;
  bool attracted = false;
  int escaped = 0;
  int certified = 0;
  for (const Complex start : {b + 2.0, b - 2.0}) {
    const Fate fate = orbit_fate(form, SpherePoint::from_complex(start), budget, tol);
    v.steps = std::max(v.steps, fate_steps(fate));
    if (std::holds_alternative<AttractedToCycle>(fate)) attracted = true;
    if (const auto* p = std::get_if<AttractedToPoint>(&fate); p != nullptr && !p->point.is_infinity()) {
      attracted = true;
    }
    if (const auto* e = std::get_if<EscapesParabolic>(&fate)) {
      ++escaped;
      if (e->certified) {
        ++certified;
        v.certificates.push_back(*e->certificate);
      }
    }
    v.critical_fates.push_back(fate);
  }
  if (attracted) {
    v.connectivity = Connectivity::Connected;
    v.tier = Tier::Numeric;
    v.note = "critical orbit attracted to a cycle";
  } else if (escaped == 2) {
    v.connectivity = Connectivity::Cantor;
    v.tier = certified == 2 ? Tier::Certified : Tier::Numeric;
    v.note = "both critical orbits escape to the parabolic point";
  } else {
    v.note = "critical orbit not resolved";
  }
  return v;
}

/// Connectivity for the class of f_{l1, l2}: the Per_1(1) ladder when a
/// multiplier is 1; otherwise only the theorem-backed cases (H, where J is a
/// quasicircle, and B0 with its two non-repelling fixed points) are decided.
inline Verdict connectivity_lambda_form(const LambdaForm& form, const TierPolicy& policy = {},
                                        std::size_t budget = kDefaultBudget, double tol = kDefaultTol) {
  if (near_one(form.lambda1)) return connectivity_per1(form.lambda2, policy, budget, tol);
  if (near_one(form.lambda2)) return connectivity_per1(form.lambda1, policy, budget, tol);
  const RegionLabel label = region_membership(form);
  Verdict v;
  if (label.ambiguous) {
    v.note = "near a region boundary";
  } else if (label.region == Region::H) {
    v = {Connectivity::Connected, Tier::TheoremShortcut, Rule::Quasicircle, 0, {}, {}, "quasicircle Julia set"};
  } else if (label.region == Region::B0) {
    v = {Connectivity::Connected, Tier::TheoremShortcut, Rule::T2, 0, {}, {}, "two non-repelling fixed points"};
  } else {
    v.note = "outside Per_1(1) and the closure of H";
  }
  return v;
}

struct RepellingReport {
  std::size_t samples = 0;
  std::size_t evaluated = 0;
  std::size_t rejected = 0;
  std::size_t violations = 0;
  double min_re_lambda3 = std::numeric_limits<double>::infinity();
  Complex argmin_lambda1;
  Complex argmin_lambda2;
};

/// Pairs outside the open bidisk, or with l1 l2 within 1e-14 of 1, are never evaluated.
inline bool accept_bidisk_pair(Complex l1, Complex l2) {
  return std::abs(l1) < 1.0 && std::abs(l2) < 1.0 && std::abs(l1 * l2 - 1.0) > 1e-14;
}

namespace detail {

inline void record_repelling(RepellingReport& r, Complex l1, Complex l2) {
  ++r.samples;
  if (!accept_bidisk_pair(l1, l2)) {
    ++r.rejected;
    return;
  }
  ++r.evaluated;
  const double re = lambda3_from_eq1(l1, l2).real();
  if (!(re > 1.0)) ++r.violations;
  if (re < r.min_re_lambda3) {
    r.min_re_lambda3 = re;
    r.argmin_lambda1 = l1;
    r.argmin_lambda2 = l2;
  }
}

inline void merge_repelling(RepellingReport& into, const RepellingReport& part) {
  into.samples += part.samples;
  into.evaluated += part.evaluated;
  into.rejected += part.rejected;
  into.violations += part.violations;
  if (part.min_re_lambda3 < into.min_re_lambda3) {
    into.min_re_lambda3 = part.min_re_lambda3;
    into.argmin_lambda1 = part.argmin_lambda1;
    into.argmin_lambda2 = part.argmin_lambda2;
  }
}

}  // namespace detail

/// Re lambda3 over explicitly given pairs.
inline RepellingReport verify_repelling(std::span<const std::pair<Complex, Complex>> pairs) {
  RepellingReport r;
  for (const auto& [l1, l2] : pairs) detail::record_repelling(r, l1, l2);
  return r;
}

/// Re lambda3 over `samples` pairs drawn uniformly from the open bidisk.
/// Sample i depends only on (seed, i), so the report does not depend on `threads`.
inline RepellingReport verify_repelling(std::size_t samples, std::uint64_t seed, unsigned threads = 1) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<RepellingReport> parts(blocks);
  parallel_for(blocks, threads, [&](std::size_t blk) {
    const std::size_t end = std::min(samples, (blk + 1) * kBlock);
    for (std::size_t i = blk * kBlock; i < end; ++i) {
      CounterRng rng(seed, i);
      const Complex l1 = rng.in_disk();
      const Complex l2 = rng.in_disk();
      detail::record_repelling(parts[blk], l1, l2);
    }
  });
  RepellingReport total;
  for (const auto& part : parts) detail::merge_repelling(total, part);
  return total;
}

}  // namespace quadmod
