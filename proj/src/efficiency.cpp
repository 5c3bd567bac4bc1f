#include "conerank/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conerank {

namespace {

bool same_cone(const PolyConeD& a, const PolyConeD& b) {
  if (a.k() != b.k() || a.rho().kind() != b.rho().kind()) return false;
  return a.is_plus_infinity() || a.rho_value() == b.rho_value();
}

void require_finite_rho(const PolyConeD& cone, const char* what) {
  if (cone.is_plus_infinity()) {
    throw DomainError(std::string(what) + " requires a finite rho");
  }
}

void require_matching(const OffsetSet& Zb, const PolyConeD& cone) {
  if (!same_cone(Zb.cone, cone)) {
    throw DomainError("offset set was built for rho = " + Zb.cone.rho().to_string() +
                      ", not rho = " + cone.rho().to_string());
  }
}

/// Row-wise r-transform of the whole set.
Eigen::MatrixXd r_matrix(const AlternativeSet& Z, const PolyConeD& cone) {
  Eigen::MatrixXd R(Z.values().rows(), Z.values().cols());
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    R.row(i) = r_transform(Z.values().row(i).transpose(), cone).transpose();
  }
  return R;
}

double scalarize_r(const Eigen::Ref<const VectorXd>& r, const ScalarizationParams& params) {
  const double total = detail::ordered_sum(r);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index l = 0; l < r.size(); ++l) {
    best = std::min(best, params.lambda(l) * (r(l) + params.sigma * total));
  }
  return best;
}

struct Argmax {
  std::vector<std::size_t> indices;
  double value;
};

Argmax argmax_over(const Eigen::MatrixXd& R, const ScalarizationParams& params) {
  std::vector<double> values(static_cast<std::size_t>(R.rows()));
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    values[static_cast<std::size_t>(i)] = scalarize_r(R.row(i).transpose(), params);
    best = std::max(best, values[static_cast<std::size_t>(i)]);
  }
  const double slack = kArgmaxRelativeTolerance * std::max(1.0, std::abs(best));
  Argmax out{{}, best};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= best - slack) out.indices.push_back(i);
  }
  return out;
}

void require_params(const ScalarizationParams& params, int k) {
  if (params.lambda.size() != k) {
    throw DimensionError("lambda has length " + std::to_string(params.lambda.size()) +
                         ", expected " + std::to_string(k));
  }
}

}  // namespace

ScalarizationParams::ScalarizationParams(VectorXd lambda_, double sigma_)
    : lambda(std::move(lambda_)), sigma(sigma_) {
  if (!lambda.allFinite() || (lambda.array() <= 0.0).any()) {
    throw DomainError("lambda components must be positive and finite");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be >= 0");
}

const EfficiencyRecord& EfficiencyReport::at(const std::string& label) const {
  for (const auto& rec : records) {
    if (rec.label == label) return rec;
  }
  throw DomainError("unknown label: " + label);
}

std::vector<std::string> EfficiencyReport::efficient_labels() const {
  std::vector<std::string> out;
  for (const auto& rec : records) {
    if (rec.efficient) out.push_back(rec.label);
  }
  return out;
}

double tradeoff_bound(int k, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  return (1.0 + (k - 1) * sigma) / sigma;
}

double default_epsilon(const AlternativeSet& Z, const PolyConeD& cone) {
  require_finite_rho(cone, "offset");
  const double scale = r_matrix(Z, cone).cwiseAbs().maxCoeff();
  return std::max(1e-3 * scale, 1e-9);
}

OffsetSet offset_set(const AlternativeSet& Z, const PolyConeD& cone, double epsilon) {
  require_finite_rho(cone, "offset");
  if (cone.is_diagonal_ray()) {
    throw DomainError("rho = -1/k: r-components always sum to 0, positivity is unattainable");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
  if (Z.k() != cone.k()) throw DimensionError("set dimension does not match cone");

  // r(c * 1)_l = c (1 + k rho), so a single scalar along 1 lifts every component.
  const double gain = 1.0 + cone.k() * cone.rho_value();
  const double m = r_matrix(Z, cone).minCoeff();
  double c = std::max(0.0, (epsilon - m) / gain);

  Eigen::MatrixXd shifted = Z.values().array() + c;
  for (int attempt = 0; attempt < 8 && c > 0.0; ++attempt) {
    AlternativeSet trial(Z.labels(), shifted);
    if (r_matrix(trial, cone).minCoeff() >= epsilon) break;
    c = std::nextafter(c + c * 1e-15, std::numeric_limits<double>::infinity());
    shifted = Z.values().array() + c;
  }
  return OffsetSet{AlternativeSet(Z.labels(), std::move(shifted)),
                   VectorXd::Constant(cone.k(), c), epsilon, cone};
}

OffsetSet offset_set(const AlternativeSet& Z, const PolyConeD& cone) {
  return offset_set(Z, cone, default_epsilon(Z, cone));
}

double scalarization_value(const Eigen::Ref<const VectorXd>& y, const PolyConeD& cone,
                           const ScalarizationParams& params) {
  require_finite_rho(cone, "scalarization");
  require_params(params, cone.k());
  return scalarize_r(r_transform(y, cone), params);
}

PInfinitySolution solve_p_infinity(const AlternativeSet& Z, const PolyConeD& cone,
                                   const ScalarizationParams& params) {
  require_finite_rho(cone, "P-infinity");
  require_params(params, cone.k());
  const Argmax best = argmax_over(r_matrix(Z, cone), params);
  PInfinitySolution out{{}, best.value};
  for (auto i : best.indices) out.argmax_labels.push_back(Z.label(i));
  return out;
}

PInfinitySolution solve_p_infinity(const OffsetSet& Zb, const PolyConeD& cone,
                                   const ScalarizationParams& params) {
  require_matching(Zb, cone);
  return solve_p_infinity(Zb.base, cone, params);
}

EfficiencyReport efficient_subset(const AlternativeSet& Z, const PolyConeD& cone) {
  if (Z.k() != cone.k()) throw DimensionError("set dimension does not match cone");
  const auto& Y = Z.values();
  const auto n = static_cast<std::size_t>(Y.rows());
  EfficiencyReport report{cone, {}};
  report.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    EfficiencyRecord rec;
    rec.label = Z.label(i);
    rec.efficient = true;
    const auto ybar = Y.row(static_cast<Eigen::Index>(i)).transpose();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (dominates(Y.row(static_cast<Eigen::Index>(j)).transpose(), ybar, cone)) {
        rec.efficient = false;
        rec.dominator_label = Z.label(j);
        break;
      }
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

EfficiencyTestResult efficiency_test(const OffsetSet& Zb, const std::string& label,
                                     const PolyConeD& cone) {
  require_matching(Zb, cone);
  const std::size_t target = Zb.base.index_of(label);
  const Eigen::MatrixXd R = r_matrix(Zb.base, cone);
  const VectorXd rbar = R.row(static_cast<Eigen::Index>(target)).transpose();
  if ((rbar.array() <= 0.0).any()) {
    throw DomainError("r-components of " + label + " are not positive; offset the set first");
  }

  const ScalarizationParams params(rbar.cwiseInverse(), 0.0);
  const Argmax best = argmax_over(R, params);

  bool efficient = std::find(best.indices.begin(), best.indices.end(), target) != best.indices.end();
  if (efficient) {
    const auto ybar = Zb.base.values().row(static_cast<Eigen::Index>(target)).transpose();
    for (auto i : best.indices) {
      if (i == target) continue;
      if (dominates(Zb.base.values().row(static_cast<Eigen::Index>(i)).transpose(), ybar, cone)) {
        efficient = false;
        break;
      }
    }
  }
  return {efficient, params.lambda};
}

ProperEfficiencyCertificate proper_efficiency_certificate(const OffsetSet& Zb,
                                                          const std::string& label,
                                                          const PolyConeD& cone, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  require_matching(Zb, cone);
  const std::size_t target = Zb.base.index_of(label);
  const Eigen::MatrixXd R = r_matrix(Zb.base, cone);
  const VectorXd rbar = R.row(static_cast<Eigen::Index>(target)).transpose();
  const VectorXd augmented = rbar.array() + sigma * detail::ordered_sum(rbar);
  if ((augmented.array() <= 0.0).any()) {
    throw DomainError("augmented r-components of " + label + " are not positive");
  }

  const ScalarizationParams params(augmented.cwiseInverse(), sigma);
  const Argmax best = argmax_over(R, params);
  const bool unique = best.indices.size() == 1 && best.indices.front() == target;
  return {unique, sigma, tradeoff_bound(cone.k(), sigma), params.lambda};
}

std::vector<double> default_sigma_grid() {
  return {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

ProperEfficiencyCertificate certify_over_sigma_grid(const OffsetSet& Zb, const std::string& label,
                                                    const PolyConeD& cone,
                                                    std::span<const double> sigmas) {
  if (sigmas.empty()) throw DomainError("empty sigma grid");
  std::vector<double> ordered(sigmas.begin(), sigmas.end());
  std::sort(ordered.begin(), ordered.end(), std::greater<>());
  std::optional<ProperEfficiencyCertificate> last;
  for (double sigma : ordered) {
    auto cert = proper_efficiency_certificate(Zb, label, cone, sigma);
    if (cert.certified) return cert;
    last = std::move(cert);
  }
  return *last;
}

double tradeoff_constant(const AlternativeSet& Z, const std::string& label,
                         const PolyConeD& cone) {
  require_finite_rho(cone, "trade-off constant");
  const std::size_t target = Z.index_of(label);
  const auto& Y = Z.values();
  const auto ybar = Y.row(static_cast<Eigen::Index>(target)).transpose();
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    if (static_cast<std::size_t>(i) != target && dominates(Y.row(i).transpose(), ybar, cone)) {
      throw DomainError(label + " is not efficient (dominated by " + Z.label(i) + ")");
    }
  }

  const Eigen::MatrixXd R = r_matrix(Z, cone);
  const VectorXd rbar = R.row(static_cast<Eigen::Index>(target)).transpose();
  double n_max = 0.0;
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    if (static_cast<std::size_t>(i) == target) continue;
    for (Eigen::Index l = 0; l < R.cols(); ++l) {
      const double gain = R(i, l) - rbar(l);
      if (!(gain > 0.0)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < R.cols(); ++j) {
        const double loss = rbar(j) - R(i, j);
        if (loss > 0.0) best = std::min(best, gain / loss);
      }
      if (!std::isfinite(best)) {
        throw DomainError(label + " is not efficient: " + Z.label(static_cast<std::size_t>(i)) +
                          " gains without any loss");
      }
      n_max = std::max(n_max, best);
    }
  }
  return n_max;
}

double tradeoff_constant(const OffsetSet& Zb, const std::string& label, const PolyConeD& cone) {
  require_matching(Zb, cone);
  return tradeoff_constant(Zb.base, label, cone);
}

std::vector<CircleWitnessPoint> improperness_witness_circle(std::span<const double> deltas) {
  const double s5 = std::sqrt(5.0);
  const double ybar1 = 2.0 / s5;
  const double ybar2 = 1.0 / s5;

  std::vector<CircleWitnessPoint> out;
  out.reserve(deltas.size());
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw DomainError("deltas must be positive");
    if (!(delta < previous)) throw DomainError("deltas must be strictly decreasing");
    previous = delta;
    const double y2 = ybar2 + delta;
    if (y2 > 1.0) throw DomainError("delta moves y2 beyond the unit circle");
    const double y1 = std::sqrt(1.0 - y2 * y2);

    // Both differences vanish at ybar; they are rewritten in cancellation-free
    // form (gain ~ 3 delta / 2, loss ~ 5 sqrt5 delta^2 / 8).
    const double gain = -delta * (2.0 * ybar2 + delta) / (y1 + ybar1) + 2.0 * delta;
    const double loss = 5.0 * delta * delta / ((s5 - y2) + 2.0 * y1);
    out.push_back({delta, gain / loss});
  }
  return out;
}

}  // namespace conerank
