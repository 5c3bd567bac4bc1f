#pragma once

/// The polyhedral cone family K(rho) = { y : y_l + rho * sum_i y_i >= 0, l = 1..k },
/// the linear r-transform that maps it onto the nonnegative orthant, and the
/// cone-induced dominance relation between attribute vectors.
///
/// rho ranges over [-1/k, +inf). rho = 0 is the nonnegative orthant,
/// rho = -1/k the diagonal ray t*1, and rho -> +inf the half-space sum(y) >= 0.

#include <cmath>
#include <charconv>
#include <string>

#include <Eigen/Dense>

#include "conerank/error.hpp"

namespace conerank {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VectorXd = Vector<double>;

/// Cone parameter. The lower bound -1/k and +infinity are symbolic so that
/// neither depends on decimal rounding or float overflow.
template <typename Scalar>
class Rho {
 public:
  enum class Kind { Finite, NegReciprocalK, PlusInfinity };

  static Rho finite(Scalar value) { return Rho(Kind::Finite, value); }
  /// Exactly -1/k for whatever k the cone is built with.
  static Rho neg_reciprocal_k() { return Rho(Kind::NegReciprocalK, Scalar(0)); }
  static Rho plus_infinity() { return Rho(Kind::PlusInfinity, Scalar(0)); }

  Kind kind() const { return kind_; }
  bool is_plus_infinity() const { return kind_ == Kind::PlusInfinity; }
  bool is_neg_reciprocal_k() const { return kind_ == Kind::NegReciprocalK; }

  /// Numeric value for dimension k; throws for +infinity.
  Scalar value(int k) const {
    switch (kind_) {
      case Kind::Finite:
        return value_;
      case Kind::NegReciprocalK:
        return Scalar(-1) / Scalar(k);
      case Kind::PlusInfinity:
        break;
    }
    throw DomainError("rho = +inf has no finite value");
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Finite: {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(value_));
        return std::string(buf, res.ptr);
      }
      case Kind::NegReciprocalK:
        return "-1/k";
      case Kind::PlusInfinity:
        return "+inf";
    }
    return {};
  }

 private:
  Rho(Kind kind, Scalar value) : kind_(kind), value_(value) {}

  Kind kind_;
  Scalar value_;
};

using RhoD = Rho<double>;

struct ConeOptions {
  /// Accept rho within snap_tolerance of -1/k (on either side) as exactly -1/k.
  bool snap_to_bound = false;
  double snap_tolerance = 1e-12;
};

enum class ConeKind { Orthant, HalfSpace, DiagonalRay, SupersetOfOrthant, SubsetOfOrthant };

inline const char* to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::Orthant:
      return "ORTHANT";
    case ConeKind::HalfSpace:
      return "HALF_SPACE";
    case ConeKind::DiagonalRay:
      return "DIAGONAL_RAY";
    case ConeKind::SupersetOfOrthant:
      return "SUPERSET_OF_ORTHANT";
    case ConeKind::SubsetOfOrthant:
      return "SUBSET_OF_ORTHANT";
  }
  return "?";
}

template <typename Scalar>
class PolyCone {
 public:
  PolyCone(int k, Rho<Scalar> rho, ConeOptions options = {}) : k_(k), rho_(rho) {
    if (k < 2) {
      throw DomainError("cone dimension must be at least 2, got " + std::to_string(k));
    }
    if (rho_.kind() != Rho<Scalar>::Kind::Finite) return;

    const Scalar value = rho_.value(k);
    const Scalar bound = Scalar(-1) / Scalar(k);
    if (!std::isfinite(static_cast<double>(value))) {
      throw DomainError("rho must be finite or the symbolic +inf");
    }
    if (value == bound) {
      rho_ = Rho<Scalar>::neg_reciprocal_k();
    } else if (options.snap_to_bound &&
               std::abs(static_cast<double>(value - bound)) <= options.snap_tolerance) {
      rho_ = Rho<Scalar>::neg_reciprocal_k();
    } else if (value < bound) {
      throw DomainError("rho below -1/k: rho = " + rho_.to_string() + ", k = " + std::to_string(k));
    }
  }

  static PolyCone orthant(int k) { return PolyCone(k, Rho<Scalar>::finite(Scalar(0))); }

  int k() const { return k_; }
  const Rho<Scalar>& rho() const { return rho_; }
  bool is_plus_infinity() const { return rho_.is_plus_infinity(); }
  bool is_diagonal_ray() const { return rho_.is_neg_reciprocal_k(); }
  Scalar rho_value() const { return rho_.value(k_); }

 private:
  int k_;
  Rho<Scalar> rho_;
};

using PolyConeD = PolyCone<double>;

namespace detail {

template <typename Derived>
void require_attribute_vector(const Eigen::MatrixBase<Derived>& y, int k) {
  if (y.size() != k) {
    throw DimensionError("vector of length " + std::to_string(y.size()) +
                         " does not match cone dimension " + std::to_string(k));
  }
  if (!y.allFinite()) throw DomainError("attribute vector has non-finite components");
}

/// Left-to-right sum; every r-component in the library is built from this so
/// that membership, dominance and the efficiency screens round identically.
template <typename Derived>
typename Derived::Scalar ordered_sum(const Eigen::MatrixBase<Derived>& y) {
  typename Derived::Scalar s(0);
  for (Eigen::Index i = 0; i < y.size(); ++i) s += y(i);
  return s;
}

/// r_l given a precomputed ordered_sum(y). Finite rho only.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Scalar r_component(const Eigen::MatrixBase<Derived>& y, Eigen::Index l, Scalar sum,
                   const PolyCone<Scalar>& cone) {
  if (cone.is_diagonal_ray()) {
    Scalar acc(0);
    for (Eigen::Index i = 0; i < y.size(); ++i) acc += y(l) - y(i);
    return acc / Scalar(y.size());
  }
  return y(l) + cone.rho_value() * sum;
}

template <typename Derived, typename Scalar = typename Derived::Scalar>
bool in_cone(const Eigen::MatrixBase<Derived>& v, const PolyCone<Scalar>& cone, Scalar tol) {
  const Scalar sum = ordered_sum(v);
  if (cone.is_plus_infinity()) return sum >= -tol;
  // The inequalities alone admit the whole line t * 1; keep the half t >= 0.
  if (cone.is_diagonal_ray() && !(sum >= -tol)) return false;
  for (Eigen::Index l = 0; l < v.size(); ++l) {
    if (!(r_component(v, l, sum, cone) >= -tol)) return false;
  }
  return true;
}

}  // namespace detail

/// r_l = y_l + rho * sum_i y_i. At rho = -1/k this is evaluated as the mean of
/// pairwise differences, so vectors with equal components map to exactly 0.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Vector<Scalar> r_transform(const Eigen::MatrixBase<Derived>& y, const PolyCone<Scalar>& cone) {
  detail::require_attribute_vector(y, cone.k());
  if (cone.is_plus_infinity()) {
    throw DomainError("r-transform is undefined for rho = +inf; use the half-space test");
  }
  const Scalar sum = detail::ordered_sum(y);
  Vector<Scalar> r(y.size());
  for (Eigen::Index l = 0; l < y.size(); ++l) r(l) = detail::r_component(y, l, sum, cone);
  return r;
}

/// Membership with an absolute slack `tol` on every defining inequality
/// (default 0: plain IEEE comparison).
template <typename Derived, typename Scalar = typename Derived::Scalar>
bool cone_contains(const Eigen::MatrixBase<Derived>& v, const PolyCone<Scalar>& cone,
                   Scalar tol = Scalar(0)) {
  detail::require_attribute_vector(v, cone.k());
  return detail::in_cone(v, cone, tol);
}

/// y dominates ybar: y != ybar and y - ybar lies in the cone. For the
/// half-space limit the sum must increase strictly, otherwise every pair with
/// equal sums would dominate each other.
template <typename DerivedA, typename DerivedB, typename Scalar = typename DerivedA::Scalar>
bool dominates(const Eigen::MatrixBase<DerivedA>& y, const Eigen::MatrixBase<DerivedB>& ybar,
               const PolyCone<Scalar>& cone, Scalar tol = Scalar(0)) {
  detail::require_attribute_vector(y, cone.k());
  detail::require_attribute_vector(ybar, cone.k());
  if ((y.array() == ybar.array()).all()) return false;
  const Vector<Scalar> diff = y - ybar;
  if (cone.is_plus_infinity()) return detail::ordered_sum(diff) > tol;
  return detail::in_cone(diff, cone, tol);
}

template <typename Scalar>
ConeKind classify_cone(const PolyCone<Scalar>& cone) {
  if (cone.is_plus_infinity()) return ConeKind::HalfSpace;
  if (cone.is_diagonal_ray()) return ConeKind::DiagonalRay;
  const Scalar rho = cone.rho_value();
  if (rho == Scalar(0)) return ConeKind::Orthant;
  return rho > Scalar(0) ? ConeKind::SupersetOfOrthant : ConeKind::SubsetOfOrthant;
}

}  // namespace conerank
