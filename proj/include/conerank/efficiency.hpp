#pragma once

/// Cone efficiency and proper efficiency over finite alternative sets.
///
/// Two independent routes decide efficiency:
///   * efficient_subset   - brute-force pairwise dominance screen;
///   * efficiency_test    - max-min scalarization with lambda_l = 1 / r_l(ybar)
///                          on a translated copy of the set whose r-values are
///                          all positive (OffsetSet).
/// Proper efficiency is certified through the sigma-augmented scalarization
/// and quantified by the finite trade-off constant N.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conerank/alternatives.hpp"
#include "conerank/cone.hpp"

namespace conerank {

/// A copy of Z translated by c * 1 so that every r-component is >= epsilon
/// under `cone`.
struct OffsetSet {
  AlternativeSet base;
  VectorXd shift;
  double epsilon;
  PolyConeD cone;
};

struct ScalarizationParams {
  VectorXd lambda;
  double sigma = 0.0;

  ScalarizationParams(VectorXd lambda_, double sigma_);
};

struct ProperEfficiencyCertificate {
  bool certified;
  double sigma;
  double n_bound;
  VectorXd lambda_used;
};

struct EfficiencyRecord {
  std::string label;
  bool efficient = false;
  std::optional<std::string> dominator_label;
  std::optional<VectorXd> lambda_used;
  /// Trade-off constant N of an efficient element.
  std::optional<double> tradeoff_bound_N;
  /// Verdict of the scalarization test, when it was run.
  std::optional<bool> scalarization_efficient;
  std::optional<ProperEfficiencyCertificate> certificate;
};

struct EfficiencyReport {
  PolyConeD cone;
  std::vector<EfficiencyRecord> records;

  const EfficiencyRecord& at(const std::string& label) const;
  std::vector<std::string> efficient_labels() const;
};

struct PInfinitySolution {
  std::vector<std::string> argmax_labels;
  double value;
};

struct EfficiencyTestResult {
  bool efficient;
  VectorXd lambda_used;
};

struct CircleWitnessPoint {
  double delta;
  double ratio;
};

/// Values within this relative distance of the maximum count as co-maximizers.
inline constexpr double kArgmaxRelativeTolerance = 1e-12;

/// (1 + (k - 1) sigma) / sigma.
double tradeoff_bound(int k, double sigma);

/// 1e-3 times the largest |r_l| over the set, floored at 1e-9.
double default_epsilon(const AlternativeSet& Z, const PolyConeD& cone);

OffsetSet offset_set(const AlternativeSet& Z, const PolyConeD& cone, double epsilon);
OffsetSet offset_set(const AlternativeSet& Z, const PolyConeD& cone);

/// min_l lambda_l * (r_l + sigma * sum_i r_i).
double scalarization_value(const Eigen::Ref<const VectorXd>& y, const PolyConeD& cone,
                           const ScalarizationParams& params);

/// All labels attaining the maximal scalarization value, in input order.
PInfinitySolution solve_p_infinity(const AlternativeSet& Z, const PolyConeD& cone,
                                   const ScalarizationParams& params);
PInfinitySolution solve_p_infinity(const OffsetSet& Zb, const PolyConeD& cone,
                                   const ScalarizationParams& params);

/// Brute-force O(n^2 k) screen; the recorded witness is the lowest-index
/// dominator.
EfficiencyReport efficient_subset(const AlternativeSet& Z, const PolyConeD& cone);

EfficiencyTestResult efficiency_test(const OffsetSet& Zb, const std::string& label,
                                     const PolyConeD& cone);

ProperEfficiencyCertificate proper_efficiency_certificate(const OffsetSet& Zb,
                                                          const std::string& label,
                                                          const PolyConeD& cone, double sigma);

/// {1, 1e-1, ..., 1e-6}.
std::vector<double> default_sigma_grid();

/// Tries sigmas in decreasing order and returns the first (largest) one that
/// certifies; `certified == false` with the smallest sigma tried otherwise.
ProperEfficiencyCertificate certify_over_sigma_grid(const OffsetSet& Zb, const std::string& label,
                                                    const PolyConeD& cone,
                                                    std::span<const double> sigmas);

/// Smallest N such that every gain r_l - rbar_l is bounded by N times some
/// loss rbar_j - r_j. Throws DomainError when `label` is dominated.
double tradeoff_constant(const AlternativeSet& Z, const std::string& label, const PolyConeD& cone);
double tradeoff_constant(const OffsetSet& Zb, const std::string& label, const PolyConeD& cone);

/// Trade-off ratios (r2 - rbar2) / (rbar1 - r1) for rho = 1 along the unit
/// circle approaching ybar = (2/sqrt5, 1/sqrt5) with y2 = 1/sqrt5 + delta.
/// Deltas must be positive and strictly decreasing.
std::vector<CircleWitnessPoint> improperness_witness_circle(std::span<const double> deltas);

}  // namespace conerank
