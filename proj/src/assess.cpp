#include "conerank/assess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conerank {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_length(const Eigen::Ref<const VectorXd>& y, Eigen::Index k, const char* what) {
  if (y.size() != k) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(k) +
                         " but the attribute vector has length " + std::to_string(y.size()));
  }
}

void require_positive(const Eigen::Ref<const VectorXd>& y, Family family) {
  if ((y.array() <= 0.0).any()) {
    throw DomainError(std::string(to_string(family)) + " requires strictly positive attributes");
  }
}

void require_finite_rho(const RhoD& rho) {
  if (rho.is_plus_infinity()) throw DomainError("rho must be finite for this family");
}

/// (sum_l c_l y_l^p)^(1/p), scaled by the extreme component so the powers
/// stay within [0, 1] and cannot overflow for large |p|.
double weighted_power_mean(const Eigen::Ref<const VectorXd>& y, const VectorXd& coeff, double p) {
  const double pivot = p > 0.0 ? y.maxCoeff() : y.minCoeff();
  double acc = 0.0;
  for (Eigen::Index l = 0; l < y.size(); ++l) acc += coeff(l) * std::pow(y(l) / pivot, p);
  return pivot * std::pow(acc, 1.0 / p);
}

double min_r(const Eigen::Ref<const VectorXd>& y, const RhoD& rho) {
  const PolyConeD cone(static_cast<int>(y.size()), rho);
  return r_transform(y, cone).minCoeff();
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::MeanOrderP:
      return "MEAN_ORDER_P";
    case Family::Ces:
      return "CES";
    case Family::CobbDouglas:
      return "COBB_DOUGLAS";
    case Family::Leontief:
      return "LEONTIEF";
    case Family::Chebyshev:
      return "CHEBYSHEV";
    case Family::AugLeontief:
      return "AUG_LEONTIEF";
    case Family::GenLeontief:
      return "GEN_LEONTIEF";
    case Family::PiecewiseBalance:
      return "PIECEWISE_BALANCE";
    case Family::SmoothPdia:
      return "SMOOTH_PDIA";
  }
  return "?";
}

const char* to_string(AssessmentClass cls) {
  switch (cls) {
    case AssessmentClass::Pdca:
      return "PDCA";
    case AssessmentClass::Pdia:
      return "PDIA";
    case AssessmentClass::PdiaLocallyPdca:
      return "PDIA_LOCALLY_PDCA";
  }
  return "?";
}

std::string Power::to_string() const {
  switch (limit) {
    case Limit::None:
      return format_double(value);
    case Limit::ToZero:
      return "->0";
    case Limit::ToNegInf:
      return "->-inf";
    case Limit::ToPosInf:
      return "->+inf";
  }
  return {};
}

AssessmentSpec AssessmentSpec::mean_order_p(Power p) {
  if (p.limit == Power::Limit::ToPosInf) throw DomainError("mean of order p: p -> +inf unsupported");
  if (p.is_finite() && (p.value == 0.0 || !std::isfinite(p.value))) {
    throw DomainError("mean of order p: p must be finite and nonzero (use the p -> 0 limit)");
  }
  return AssessmentSpec(params::MeanOrderP{p});
}

AssessmentSpec AssessmentSpec::ces(double a, VectorXd coefficients, double p) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("CES: a must be positive");
  if (!coefficients.allFinite() || (coefficients.array() <= 0.0).any()) {
    throw DomainError("CES: coefficients must be positive");
  }
  if (!(p < 1.0) || p == 0.0 || !std::isfinite(p)) {
    throw DomainError("CES: p must satisfy p < 1, p != 0");
  }
  return AssessmentSpec(params::Ces{a, std::move(coefficients), p});
}

AssessmentSpec AssessmentSpec::cobb_douglas(double a, VectorXd exponents) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("Cobb-Douglas: a must be positive");
  if (!exponents.allFinite() || (exponents.array() <= 0.0).any()) {
    throw DomainError("Cobb-Douglas: exponents must be positive");
  }
  return AssessmentSpec(params::CobbDouglas{a, std::move(exponents)});
}

AssessmentSpec AssessmentSpec::leontief() { return AssessmentSpec(params::Leontief{}); }

AssessmentSpec AssessmentSpec::chebyshev(VectorXd reference) {
  if (!reference.allFinite()) throw DomainError("Chebyshev: reference point must be finite");
  return AssessmentSpec(params::Chebyshev{std::move(reference)});
}

AssessmentSpec AssessmentSpec::aug_leontief(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw DomainError("augmented Leontief: rho must satisfy 0 <= rho < +inf");
  }
  return AssessmentSpec(params::AugLeontief{rho});
}

AssessmentSpec AssessmentSpec::gen_leontief(RhoD rho) {
  require_finite_rho(rho);
  // k >= 2, so -1/2 is the loosest possible bound; the exact one is checked
  // against the attribute count at evaluation.
  if (rho.kind() == RhoD::Kind::Finite && !(rho.value(2) >= -0.5)) {
    throw DomainError("generalized Leontief: rho below -1/k");
  }
  return AssessmentSpec(params::GenLeontief{rho});
}

AssessmentSpec AssessmentSpec::piecewise_balance(RhoD rho, double b) {
  require_finite_rho(rho);
  if (rho.kind() == RhoD::Kind::Finite && !(rho.value(2) >= -0.5)) {
    throw DomainError("piecewise balance: rho below -1/k");
  }
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("piecewise balance: b must be positive");
  return AssessmentSpec(params::PiecewiseBalance{rho, b});
}

AssessmentSpec AssessmentSpec::smooth_pdia(Power p, double rho, VectorXd ideal) {
  if (p.limit == Power::Limit::ToZero || p.limit == Power::Limit::ToNegInf ||
      (p.is_finite() && !(p.value >= 1.0 && std::isfinite(p.value)))) {
    throw DomainError("smooth PDIA: p must satisfy 1 <= p <= +inf");
  }
  if (!std::isfinite(rho)) throw DomainError("smooth PDIA: rho must be finite");
  if (!ideal.allFinite()) throw DomainError("smooth PDIA: ideal point must be finite");
  return AssessmentSpec(params::SmoothPdia{p, rho, std::move(ideal)});
}

Family AssessmentSpec::family() const { return static_cast<Family>(params_.index()); }

std::optional<RhoD> AssessmentSpec::rho() const {
  return std::visit(Overloaded{
                        [](const params::AugLeontief& p) -> std::optional<RhoD> {
                          return RhoD::finite(p.rho);
                        },
                        [](const params::GenLeontief& p) -> std::optional<RhoD> { return p.rho; },
                        [](const params::PiecewiseBalance& p) -> std::optional<RhoD> {
                          return p.rho;
                        },
                        [](const params::SmoothPdia& p) -> std::optional<RhoD> {
                          return RhoD::finite(p.rho);
                        },
                        [](const auto&) -> std::optional<RhoD> { return std::nullopt; },
                    },
                    params_);
}

double evaluate(const AssessmentSpec& spec, const Eigen::Ref<const VectorXd>& y) {
  if (y.size() < 2) throw DimensionError("attribute vectors need at least 2 components");
  if (!y.allFinite()) throw DomainError("attribute vector has non-finite components");
  const Family family = spec.family();

  return std::visit(
      Overloaded{
          [&](const params::MeanOrderP& p) {
            require_positive(y, family);
            switch (p.p.limit) {
              case Power::Limit::ToZero:
                // The limit as stated for this family: the plain product.
                return y.prod();
              case Power::Limit::ToNegInf:
                return y.minCoeff();
              default:
                break;
            }
            if (p.p.value == 1.0) return detail::ordered_sum(y);
            return weighted_power_mean(y, VectorXd::Ones(y.size()), p.p.value);
          },
          [&](const params::Ces& p) {
            require_length(y, p.coefficients.size(), "CES coefficient list");
            require_positive(y, family);
            return p.a * weighted_power_mean(y, p.coefficients, p.p);
          },
          [&](const params::CobbDouglas& p) {
            require_length(y, p.exponents.size(), "Cobb-Douglas exponent list");
            require_positive(y, family);
            double acc = p.a;
            for (Eigen::Index l = 0; l < y.size(); ++l) acc *= std::pow(y(l), p.exponents(l));
            return acc;
          },
          [&](const params::Leontief&) { return y.minCoeff(); },
          [&](const params::Chebyshev& p) {
            require_length(y, p.reference.size(), "Chebyshev reference point");
            return (y - p.reference).minCoeff();
          },
          [&](const params::AugLeontief& p) { return min_r(y, RhoD::finite(p.rho)); },
          [&](const params::GenLeontief& p) { return min_r(y, p.rho); },
          [&](const params::PiecewiseBalance& p) {
            return std::min(min_r(y, p.rho), p.b * detail::ordered_sum(y));
          },
          [&](const params::SmoothPdia& p) {
            require_length(y, p.ideal.size(), "smooth PDIA ideal point");
            const VectorXd dev = p.ideal - y;
            if ((dev.array() < 0.0).any()) {
              throw DomainError("smooth PDIA: attribute exceeds the ideal point");
            }
            const double largest = dev.maxCoeff();
            double norm = largest;
            if (p.p.is_finite() && largest > 0.0) {
              double acc = 0.0;
              for (Eigen::Index l = 0; l < dev.size(); ++l) acc += std::pow(dev(l) / largest, p.p.value);
              norm = largest * std::pow(acc, 1.0 / p.p.value);
            }
            return -(norm + p.rho * detail::ordered_sum(dev));
          },
      },
      spec.params());
}

AssessmentClass classify(const AssessmentSpec& spec) {
  switch (spec.family()) {
    case Family::GenLeontief: {
      const RhoD rho = *spec.rho();
      if (rho.is_neg_reciprocal_k() || rho.value(2) < 0.0) return AssessmentClass::Pdia;
      return AssessmentClass::Pdca;
    }
    case Family::PiecewiseBalance:
    case Family::SmoothPdia:
      return AssessmentClass::PdiaLocallyPdca;
    default:
      return AssessmentClass::Pdca;
  }
}

PdiaWitness pdia_witness(const AssessmentSpec& spec, int k) {
  if (classify(spec) != AssessmentClass::Pdia) {
    throw DomainError(std::string(to_string(spec.family())) +
                      " with these parameters is not a PDIA function");
  }
  if (k < 2) throw DomainError("k must be at least 2");

  constexpr int kLevels = 3;
  const double steps[] = {1.0, 2.0};
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  VectorXd y(k);
  for (;;) {
    for (int l = 0; l < k; ++l) y(l) = 1.0 + digits[static_cast<std::size_t>(l)];
    const double base = evaluate(spec, y);
    for (double step : steps) {
      for (int j = 0; j < k; ++j) {
        VectorXd better = y;
        better(j) += step;
        const double value = evaluate(spec, better);
        if (value < base) return {y, better, base, value};
      }
    }
    int pos = 0;
    while (pos < k && ++digits[static_cast<std::size_t>(pos)] == kLevels) {
      digits[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  throw std::logic_error("no dominance reversal found for a function classified as PDIA");
}

VectorXd curve_point(double t) {
  constexpr double pi = std::numbers::pi;
  const double s2 = std::numbers::sqrt2;
  VectorXd p(3);
  p << 6.0 * std::cos(t) - (3.0 * s2 - 2.0), 10.0 * std::sin(t) + (5.0 * s2 + 2.0),
      2.0 + 5.0 * (t + pi / 4.0) / (pi / 4.0);
  return p;
}

std::vector<LabeledValue> curve_example_values(RhoD rho) {
  const AssessmentSpec spec = AssessmentSpec::gen_leontief(rho);
  constexpr double pi = std::numbers::pi;
  std::vector<LabeledValue> out;
  for (auto [label, t] : {std::pair{"diagonal", -pi / 4.0}, std::pair{"circle", -pi / 8.0},
                          std::pair{"bullet", 0.0}}) {
    VectorXd point = curve_point(t);
    const double value = evaluate(spec, point);
    out.push_back({label, t, std::move(point), value});
  }
  return out;
}

std::size_t GridAxis::count() const {
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

ContourGrid contour_sample(const AssessmentSpec& spec, std::vector<GridAxis> axes) {
  if (axes.size() != 2 && axes.size() != 3) throw DomainError("contour grids need 2 or 3 axes");
  std::size_t total = 1;
  for (const auto& axis : axes) {
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !std::isfinite(axis.step) ||
        !(axis.step > 0.0) || axis.max < axis.min) {
      throw DomainError("invalid grid axis");
    }
    total *= axis.count();
  }

  ContourGrid grid{axes, {}, spec};
  grid.values.reserve(total);
  const auto k = static_cast<Eigen::Index>(axes.size());
  std::vector<std::size_t> index(axes.size(), 0);
  VectorXd point(k);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (Eigen::Index d = 0; d < k; ++d) point(d) = axes[d].at(index[d]);
    std::optional<double> value;
    try {
      value = evaluate(spec, point);
    } catch (const DomainError&) {
      value.reset();
    }
    grid.values.push_back(value);
    for (auto d = axes.size(); d-- > 0;) {
      if (++index[d] < axes[d].count()) break;
      index[d] = 0;
    }
  }
  return grid;
}

}  // namespace conerank
