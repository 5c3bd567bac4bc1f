#include "conerank/serialize.hpp"

#include <cmath>

namespace conerank {

using nlohmann::ordered_json;

namespace {

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json vector_json(const VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

ordered_json power_json(const Power& p) {
  if (p.is_finite()) return number(p.value);
  return p.to_string();
}

}  // namespace

ordered_json to_json(const RhoD& rho) {
  switch (rho.kind()) {
    case RhoD::Kind::Finite:
      return number(rho.value(2));
    case RhoD::Kind::NegReciprocalK:
      return "-1/k";
    case RhoD::Kind::PlusInfinity:
      return "+inf";
  }
  return nullptr;
}

ordered_json to_json(const AssessmentSpec& spec) {
  ordered_json out;
  out["family"] = to_string(spec.family());
  ordered_json p = ordered_json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, params::MeanOrderP>) {
          p["p"] = power_json(v.p);
        } else if constexpr (std::is_same_v<T, params::Ces>) {
          p["a"] = v.a;
          p["coefficients"] = vector_json(v.coefficients);
          p["p"] = v.p;
        } else if constexpr (std::is_same_v<T, params::CobbDouglas>) {
          p["a"] = v.a;
          p["exponents"] = vector_json(v.exponents);
        } else if constexpr (std::is_same_v<T, params::Chebyshev>) {
          p["reference"] = vector_json(v.reference);
        } else if constexpr (std::is_same_v<T, params::AugLeontief>) {
          p["rho"] = v.rho;
        } else if constexpr (std::is_same_v<T, params::GenLeontief>) {
          p["rho"] = to_json(v.rho);
        } else if constexpr (std::is_same_v<T, params::PiecewiseBalance>) {
          p["rho"] = to_json(v.rho);
          p["b"] = v.b;
        } else if constexpr (std::is_same_v<T, params::SmoothPdia>) {
          p["p"] = power_json(v.p);
          p["rho"] = v.rho;
          p["ideal"] = vector_json(v.ideal);
        }
      },
      spec.params());
  out["params"] = std::move(p);
  out["class"] = to_string(classify(spec));
  return out;
}

ordered_json to_json(const EfficiencyReport& report) {
  ordered_json out;
  out["k"] = report.cone.k();
  out["rho"] = to_json(report.cone.rho());
  out["cone_kind"] = to_string(classify_cone(report.cone));
  ordered_json records = ordered_json::array();
  for (const auto& rec : report.records) {
    ordered_json r;
    r["label"] = rec.label;
    r["efficient"] = rec.efficient;
    r["dominator"] = rec.dominator_label ? ordered_json(*rec.dominator_label) : ordered_json(nullptr);
    r["lambda"] = rec.lambda_used ? vector_json(*rec.lambda_used) : ordered_json(nullptr);
    r["tradeoff_bound_N"] = rec.tradeoff_bound_N ? number(*rec.tradeoff_bound_N) : ordered_json(nullptr);
    r["scalarization_efficient"] =
        rec.scalarization_efficient ? ordered_json(*rec.scalarization_efficient) : ordered_json(nullptr);
    if (rec.certificate) {
      r["certificate"] = {{"certified", rec.certificate->certified},
                          {"sigma", rec.certificate->sigma},
                          {"n_bound", number(rec.certificate->n_bound)}};
    } else {
      r["certificate"] = nullptr;
    }
    records.push_back(std::move(r));
  }
  out["alternatives"] = std::move(records);
  return out;
}

ordered_json to_json(const RankingResult& result) {
  ordered_json out;
  ordered_json prov;
  prov["name"] = result.provenance.name;
  prov["function"] = to_json(result.provenance.spec);
  prov["weights"] = vector_json(result.provenance.weights.weights());
  const auto rho = result.provenance.spec.rho();
  prov["rho"] = rho ? to_json(*rho) : ordered_json(nullptr);
  out["provenance"] = std::move(prov);

  ordered_json entries = ordered_json::array();
  for (const auto& e : result.entries) {
    entries.push_back({{"rank", e.rank}, {"label", e.label}, {"score", number(e.score)}});
  }
  out["entries"] = std::move(entries);
  out["tie_groups"] = result.tie_groups;
  return out;
}

ordered_json to_json(const RankingComparison& comparison) {
  ordered_json out;
  out["kendall_tau_b"] = number(comparison.kendall_tau_b);
  ordered_json overlap = ordered_json::object();
  for (const auto& [k, v] : comparison.top_k_overlap) overlap[std::to_string(k)] = v;
  out["top_k_overlap"] = std::move(overlap);
  out["max_displacement"] = comparison.max_displacement;
  return out;
}

ordered_json to_json(const ContourGrid& grid) {
  ordered_json out;
  out["function"] = to_json(grid.spec);
  ordered_json axes = ordered_json::array();
  for (const auto& a : grid.axes) {
    axes.push_back({{"min", a.min}, {"max", a.max}, {"step", a.step}, {"count", a.count()}});
  }
  out["axes"] = std::move(axes);
  out["layout"] = "row-major, first axis slowest";
  ordered_json values = ordered_json::array();
  for (const auto& v : grid.values) values.push_back(v ? number(*v) : ordered_json(nullptr));
  out["values"] = std::move(values);
  return out;
}

ordered_json to_json(const AlternativeSet& set) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    out.push_back({{"label", set.label(i)}, {"values", vector_json(set.row(i))}});
  }
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace conerank
