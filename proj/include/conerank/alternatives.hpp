#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conerank/cone.hpp"

namespace conerank {

/// A finite, labeled set of attribute vectors stored row-wise (n x k).
class AlternativeSet {
 public:
  AlternativeSet(std::vector<std::string> labels, Eigen::MatrixXd values);

  static AlternativeSet from_rows(const std::vector<std::pair<std::string, VectorXd>>& rows);

  std::size_t size() const { return labels_.size(); }
  int k() const { return static_cast<int>(values_.cols()); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const Eigen::MatrixXd& values() const { return values_; }
  VectorXd row(std::size_t i) const { return values_.row(static_cast<Eigen::Index>(i)).transpose(); }

  std::optional<std::size_t> find(const std::string& label) const;
  /// Throws DomainError for unknown labels.
  std::size_t index_of(const std::string& label) const;

  friend bool operator==(const AlternativeSet& a, const AlternativeSet& b) {
    return a.labels_ == b.labels_ && a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && (a.values_.array() == b.values_.array()).all();
  }

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd values_;
};

}  // namespace conerank
