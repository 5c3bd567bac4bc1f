#pragma once

/// Assessment functions F : R^k -> R used to turn the Pareto partial order
/// into rankings. Two groups:
///
///   PDCA (Pareto dominance-consistent): means of order p, CES, Cobb-Douglas,
///   Leontief min, Chebyshev min(y - y_ref), augmented Leontief
///   min(y_l + rho * sum y), and the generalized Leontief for rho >= 0.
///
///   PDIA (Pareto dominance-inconsistent): the generalized Leontief for
///   -1/k <= rho < 0, which rewards attribute balance, plus two variants that
///   are dominance-consistent only locally: a piecewise form capped by
///   b * sum(y), and a smooth deviation-from-ideal form.
///
/// Weighting is not part of these functions; callers pre-scale attributes.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "conerank/cone.hpp"

namespace conerank {

enum class Family {
  MeanOrderP,
  Ces,
  CobbDouglas,
  Leontief,
  Chebyshev,
  AugLeontief,
  GenLeontief,
  PiecewiseBalance,
  SmoothPdia,
};

enum class AssessmentClass { Pdca, Pdia, PdiaLocallyPdca };

const char* to_string(Family family);
const char* to_string(AssessmentClass cls);

/// Exponent of a power mean; the limits are symbolic so that extreme
/// exponents are never pushed through pow().
struct Power {
  enum class Limit { None, ToZero, ToNegInf, ToPosInf };

  double value = 1.0;
  Limit limit = Limit::None;

  static Power finite(double p) { return {p, Limit::None}; }
  static Power to_zero() { return {0.0, Limit::ToZero}; }
  static Power to_neg_inf() { return {0.0, Limit::ToNegInf}; }
  static Power to_pos_inf() { return {0.0, Limit::ToPosInf}; }

  bool is_finite() const { return limit == Limit::None; }
  std::string to_string() const;
};

namespace params {

struct MeanOrderP {
  Power p;
};
struct Ces {
  double a;
  VectorXd coefficients;
  double p;
};
struct CobbDouglas {
  double a;
  VectorXd exponents;
};
struct Leontief {};
struct Chebyshev {
  VectorXd reference;
};
struct AugLeontief {
  double rho;
};
struct GenLeontief {
  RhoD rho;
};
struct PiecewiseBalance {
  RhoD rho;
  double b;
};
struct SmoothPdia {
  Power p;
  double rho;
  VectorXd ideal;
};

}  // namespace params

class AssessmentSpec {
 public:
  using Params = std::variant<params::MeanOrderP, params::Ces, params::CobbDouglas,
                              params::Leontief, params::Chebyshev, params::AugLeontief,
                              params::GenLeontief, params::PiecewiseBalance, params::SmoothPdia>;

  /// p must be finite and nonzero, or one of the limits ToZero / ToNegInf.
  static AssessmentSpec mean_order_p(Power p);
  static AssessmentSpec ces(double a, VectorXd coefficients, double p);
  static AssessmentSpec cobb_douglas(double a, VectorXd exponents);
  static AssessmentSpec leontief();
  static AssessmentSpec chebyshev(VectorXd reference);
  static AssessmentSpec aug_leontief(double rho);
  static AssessmentSpec gen_leontief(RhoD rho);
  static AssessmentSpec piecewise_balance(RhoD rho, double b);
  static AssessmentSpec smooth_pdia(Power p, double rho, VectorXd ideal);

  Family family() const;
  const Params& params() const { return params_; }

  /// Rho of the Leontief-type families, if any.
  std::optional<RhoD> rho() const;

 private:
  explicit AssessmentSpec(Params p) : params_(std::move(p)) {}

  Params params_;
};

/// Throws DomainError outside the family's domain (non-positive attributes
/// for power means, attributes above the ideal point for SmoothPdia, rho below
/// -1/k) and DimensionError on length mismatches.
double evaluate(const AssessmentSpec& spec, const Eigen::Ref<const VectorXd>& y);

AssessmentClass classify(const AssessmentSpec& spec);

struct PdiaWitness {
  VectorXd y;
  VectorXd y_dominating;
  double value;
  double value_dominating;
};

/// A pair y <= y' (componentwise, y != y') with F(y') < F(y), found by a
/// deterministic scan over the lattice {1,2,3}^k with unit and double steps.
/// Requires classify(spec) == Pdia.
PdiaWitness pdia_witness(const AssessmentSpec& spec, int k);

/// A point of the 3-D test curve x = 6 cos t - (3 sqrt2 - 2),
/// y = 10 sin t + (5 sqrt2 + 2), z affine from 2 to 7 over t in [-pi/4, 0].
/// At t = -pi/4 it is (2, 2, 2); t = 0 dominates every other point.
VectorXd curve_point(double t);

struct LabeledValue {
  std::string label;
  double t;
  VectorXd point;
  double value;
};

/// Generalized Leontief at the three marked curve points: "diagonal"
/// (t = -pi/4), "circle" (t = -pi/8), "bullet" (t = 0).
std::vector<LabeledValue> curve_example_values(RhoD rho);

struct GridAxis {
  double min;
  double max;
  double step;

  std::size_t count() const;
  double at(std::size_t i) const { return min + static_cast<double>(i) * step; }
};

/// Dense row-major samples (first axis slowest); nullopt marks points outside
/// the function's domain.
struct ContourGrid {
  std::vector<GridAxis> axes;
  std::vector<std::optional<double>> values;
  AssessmentSpec spec;
};

ContourGrid contour_sample(const AssessmentSpec& spec, std::vector<GridAxis> axes);

}  // namespace conerank
