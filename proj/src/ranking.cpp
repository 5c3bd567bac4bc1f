#include "conerank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace conerank {

namespace {

/// Display width in code points (labels are UTF-8).
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

WeightVector::WeightVector(VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() < 1) throw DimensionError("empty weight vector");
  if (!weights_.allFinite() || (weights_.array() <= 0.0).any()) {
    throw DomainError("weights must be positive and finite");
  }
}

WeightVector WeightVector::epi() {
  VectorXd w(3);
  w << kEpiWeightPcc, kEpiWeightHlt, kEpiWeightEco;
  return WeightVector(std::move(w));
}

AlternativeSet apply_weights(const AlternativeSet& Z, const WeightVector& w) {
  if (w.k() != Z.k()) {
    throw DimensionError("weight vector has length " + std::to_string(w.k()) + ", set has k = " +
                         std::to_string(Z.k()));
  }
  Eigen::MatrixXd scaled = Z.values() * w.weights().asDiagonal();
  return AlternativeSet(Z.labels(), std::move(scaled));
}

double epi_composite(double pcc, double hlt, double eco) {
  return kEpiWeightPcc * pcc + kEpiWeightHlt * hlt + kEpiWeightEco * eco;
}

const RankingEntry& RankingResult::at(const std::string& label) const {
  for (const auto& e : entries) {
    if (e.label == label) return e;
  }
  throw DomainError("label not in ranking: " + label);
}

std::vector<std::string> RankingResult::order() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.label);
  return out;
}

RankingResult rank(const AlternativeSet& Z, const AssessmentSpec& spec, const WeightVector& w,
                   std::string name) {
  const AlternativeSet weighted = apply_weights(Z, w);
  std::vector<RankingEntry> entries;
  entries.reserve(weighted.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    double score;
    try {
      score = evaluate(spec, weighted.row(i));
    } catch (const DomainError& e) {
      throw DomainError(weighted.label(i) + ": " + e.what());
    }
    entries.push_back({0, weighted.label(i), score});
  }

  std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });

  RankingResult result{{}, {}, RankingProvenance{std::move(name), spec, w}};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const bool tied_with_previous = i > 0 && entries[i].score == entries[i - 1].score;
    entries[i].rank = tied_with_previous ? entries[i - 1].rank : static_cast<int>(i) + 1;
    if (tied_with_previous) {
      if (result.tie_groups.empty() || result.tie_groups.back().back() != entries[i - 1].label) {
        result.tie_groups.push_back({entries[i - 1].label});
      }
      result.tie_groups.back().push_back(entries[i].label);
    }
  }
  result.entries = std::move(entries);
  return result;
}

RankingComparison compare_rankings(const RankingResult& a, const RankingResult& b) {
  const std::size_t n = a.entries.size();
  {
    std::set<std::string> la, lb;
    for (const auto& e : a.entries) la.insert(e.label);
    for (const auto& e : b.entries) lb.insert(e.label);
    if (la != lb || la.size() != n || b.entries.size() != n) {
      throw DomainError("rankings cover different label sets");
    }
  }

  // Ranks of both orderings, indexed by a's entry order.
  std::vector<int> ra(n), rb(n);
  for (std::size_t i = 0; i < n; ++i) {
    ra[i] = a.entries[i].rank;
    rb[i] = b.at(a.entries[i].label).rank;
  }

  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int da = ra[i] - ra[j];
      const int db = rb[i] - rb[j];
      if (da == 0) ++ties_a;
      if (db == 0) ++ties_b;
      if (da == 0 || db == 0) continue;
      ((da > 0) == (db > 0) ? concordant : discordant)++;
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - (n > 0 ? 1 : 0)) / 2.0;
  const double denom = std::sqrt((pairs - ties_a) * (pairs - ties_b));
  RankingComparison out;
  out.kendall_tau_b = denom > 0.0 ? static_cast<double>(concordant - discordant) / denom
                                  : std::numeric_limits<double>::quiet_NaN();

  for (int k : {5, 10, 20}) {
    const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(k), n);
    std::set<std::string> top_a, top_b;
    for (std::size_t i = 0; i < m; ++i) {
      top_a.insert(a.entries[i].label);
      top_b.insert(b.entries[i].label);
    }
    std::size_t common = 0;
    for (const auto& l : top_a) common += top_b.count(l);
    out.top_k_overlap[k] = m == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(m);
  }

  out.max_displacement = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.max_displacement = std::max(out.max_displacement, std::abs(ra[i] - rb[i]));
  }
  return out;
}

std::string format_ranking_table(const RankingResult& result) {
  std::size_t width = display_width("label");
  for (const auto& e : result.entries) width = std::max(width, display_width(e.label));
  std::ostringstream os;
  os << "rank  " << pad("label", width) << "  score\n";
  for (const auto& e : result.entries) {
    std::string r = std::to_string(e.rank);
    os << r << std::string(6 - std::min<std::size_t>(r.size(), 5), ' ') << pad(e.label, width)
       << "  " << format_score(e.score) << '\n';
  }
  return os.str();
}

std::string format_rankings_side_by_side(
    const std::vector<std::pair<std::string, RankingResult>>& columns,
    std::optional<std::size_t> top_n) {
  std::size_t rows = 0;
  for (const auto& [title, r] : columns) rows = std::max(rows, r.entries.size());
  if (top_n) rows = std::min(rows, *top_n);

  std::vector<std::size_t> widths;
  for (const auto& [title, r] : columns) {
    std::size_t w = display_width(title);
    for (std::size_t i = 0; i < std::min(rows, r.entries.size()); ++i) {
      w = std::max(w, display_width(r.entries[i].label));
    }
    widths.push_back(w);
  }
  const std::size_t rank_width = std::max<std::size_t>(4, std::to_string(rows).size());

  std::ostringstream os;
  os << pad("rank", rank_width);
  for (std::size_t c = 0; c < columns.size(); ++c) os << "  " << pad(columns[c].first, widths[c]);
  os << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    os << pad(std::to_string(i + 1), rank_width);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& entries = columns[c].second.entries;
      os << "  " << pad(i < entries.size() ? entries[i].label : std::string(), widths[c]);
    }
    os << '\n';
  }
  // Trim trailing padding.
  std::string text = os.str();
  std::string cleaned;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    cleaned += line + '\n';
  }
  return cleaned;
}

}  // namespace conerank
