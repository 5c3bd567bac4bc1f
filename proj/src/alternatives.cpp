#include "conerank/alternatives.hpp"

#include <unordered_set>

namespace conerank {

AlternativeSet::AlternativeSet(std::vector<std::string> labels, Eigen::MatrixXd values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  if (labels_.empty()) throw DomainError("alternative set is empty");
  if (static_cast<Eigen::Index>(labels_.size()) != values_.rows()) {
    throw DimensionError("label count does not match number of value rows");
  }
  if (values_.cols() < 2) throw DomainError("alternatives need at least 2 attributes");
  if (!values_.allFinite()) throw DomainError("alternative set has non-finite components");
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) throw DomainError("duplicate label: " + label);
  }
}

AlternativeSet AlternativeSet::from_rows(
    const std::vector<std::pair<std::string, VectorXd>>& rows) {
  if (rows.empty()) throw DomainError("alternative set is empty");
  const Eigen::Index k = rows.front().second.size();
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), k);
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].second.size() != k) throw DimensionError("non-uniform dimension at " + rows[i].first);
    values.row(static_cast<Eigen::Index>(i)) = rows[i].second.transpose();
    labels.push_back(rows[i].first);
  }
  return AlternativeSet(std::move(labels), std::move(values));
}

std::optional<std::size_t> AlternativeSet::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t AlternativeSet::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw DomainError("unknown label: " + label);
}

}  // namespace conerank
