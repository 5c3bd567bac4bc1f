#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conerank/alternatives.hpp"
#include "conerank/assess.hpp"

namespace conerank {

class WeightVector {
 public:
  explicit WeightVector(VectorXd weights);

  static WeightVector unit(int k) { return WeightVector(VectorXd::Ones(k)); }
  /// PCC, HLT, ECO category weights of the Environmental Performance Index.
  static WeightVector epi();

  const VectorXd& weights() const { return weights_; }
  int k() const { return static_cast<int>(weights_.size()); }

 private:
  VectorXd weights_;
};

inline constexpr double kEpiWeightPcc = 0.38;
inline constexpr double kEpiWeightHlt = 0.20;
inline constexpr double kEpiWeightEco = 0.42;

AlternativeSet apply_weights(const AlternativeSet& Z, const WeightVector& w);

/// 0.38 PCC + 0.20 HLT + 0.42 ECO.
double epi_composite(double pcc, double hlt, double eco);

struct RankingEntry {
  int rank;  // standard competition ranking: 1, 2, 2, 4
  std::string label;
  double score;
};

struct RankingProvenance {
  std::string name;
  AssessmentSpec spec;
  WeightVector weights;
};

struct RankingResult {
  std::vector<RankingEntry> entries;
  /// Label sets of size >= 2 sharing one score, in rank order.
  std::vector<std::vector<std::string>> tie_groups;
  RankingProvenance provenance;

  const RankingEntry& at(const std::string& label) const;
  std::vector<std::string> order() const;
};

/// Scores evaluate(spec, w .* y) for every alternative and sorts descending.
/// Equal scores share a rank; within a tie the display order is by label.
/// Throws DomainError naming the first alternative outside the spec's domain.
RankingResult rank(const AlternativeSet& Z, const AssessmentSpec& spec, const WeightVector& w,
                   std::string name = {});

struct RankingComparison {
  double kendall_tau_b;  // NaN when either ranking is a single tie
  std::map<int, double> top_k_overlap;
  int max_displacement;
};

RankingComparison compare_rankings(const RankingResult& a, const RankingResult& b);

/// rank | label | score, labels padded to the longest one.
std::string format_ranking_table(const RankingResult& result);

/// One row per position, one label column per ranking.
std::string format_rankings_side_by_side(
    const std::vector<std::pair<std::string, RankingResult>>& columns,
    std::optional<std::size_t> top_n = std::nullopt);

}  // namespace conerank
