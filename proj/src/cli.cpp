#include "conerank/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "conerank/assess.hpp"
#include "conerank/data_io.hpp"
#include "conerank/efficiency.hpp"
#include "conerank/error.hpp"
#include "conerank/ranking.hpp"
#include "conerank/serialize.hpp"

namespace conerank::cli {

namespace {

using nlohmann::ordered_json;

RhoD parse_rho(const std::string& token) {
  if (token == "-1/k") return RhoD::neg_reciprocal_k();
  if (token == "+inf" || token == "inf") return RhoD::plus_infinity();
  if (auto v = parse_decimal(token)) return RhoD::finite(*v);
  throw DomainError("cannot parse rho '" + token + "' (expected a decimal, -1/k or +inf)");
}

Power parse_power(const std::string& token) {
  if (token == "0" || token == "->0") return Power::to_zero();
  if (token == "-inf" || token == "->-inf") return Power::to_neg_inf();
  if (token == "inf" || token == "+inf" || token == "->+inf") return Power::to_pos_inf();
  if (auto v = parse_decimal(token)) return Power::finite(*v);
  throw DomainError("cannot parse p '" + token + "'");
}

VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

VectorXd list_or(const std::vector<double>& v, int k, double fill, const char* what) {
  if (v.empty()) return VectorXd::Constant(k, fill);
  if (static_cast<int>(v.size()) != k) {
    throw DimensionError(std::string(what) + " needs " + std::to_string(k) + " values");
  }
  return to_vector(v);
}

struct Input {
  LoadedDataset data;
  DatasetSchema schema;
};

Input load_input(const RunConfig& cfg, std::ostream& err) {
  std::string text = cfg.input ? read_file(*cfg.input) : std::string(fixture_epi_csv());
  DatasetSchema schema{cfg.input ? cfg.label_column : epi_schema().label_column,
                       cfg.attribute_columns, cfg.score_column};
  if (schema.attribute_columns.empty()) {
    if (!cfg.input) {
      schema.attribute_columns = epi_schema().attribute_columns;
    } else {
      for (const auto& column : csv_header(text)) {
        if (column != schema.label_column && column != schema.score_column.value_or("")) {
          schema.attribute_columns.push_back(column);
        }
      }
    }
  }
  LoadedDataset data = parse_csv(text, schema);
  for (const auto& w : data.warnings) err << "warning: " << w << '\n';
  return {std::move(data), std::move(schema)};
}

AssessmentSpec build_spec(const RunConfig& cfg, const std::string& name, int k,
                          const AlternativeSet* weighted) {
  if (name == "leontief") return AssessmentSpec::leontief();
  if (name == "chebyshev") return AssessmentSpec::chebyshev(list_or(cfg.reference, k, 0.0, "--ref"));
  if (name == "auglf") {
    const RhoD rho = parse_rho(cfg.rho);
    if (rho.kind() != RhoD::Kind::Finite) throw DomainError("auglf needs a finite rho >= 0");
    return AssessmentSpec::aug_leontief(rho.value(k));
  }
  if (name == "glf") return AssessmentSpec::gen_leontief(parse_rho(cfg.rho));
  if (name == "meanp") return AssessmentSpec::mean_order_p(parse_power(cfg.p.value_or("1")));
  if (name == "ces") {
    const Power p = parse_power(cfg.p.value_or("0.5"));
    if (!p.is_finite()) throw DomainError("ces needs a finite p < 1, p != 0");
    return AssessmentSpec::ces(cfg.a.value_or(1.0), list_or(cfg.coefficients, k, 1.0, "--coeffs"),
                               p.value);
  }
  if (name == "cobb") {
    return AssessmentSpec::cobb_douglas(cfg.a.value_or(1.0),
                                        list_or(cfg.exponents, k, 1.0 / k, "--exponents"));
  }
  if (name == "piecewise") {
    if (!cfg.b) throw DomainError("piecewise needs --b");
    return AssessmentSpec::piecewise_balance(parse_rho(cfg.rho), *cfg.b);
  }
  if (name == "smoothpdia") {
    VectorXd ideal;
    if (!cfg.ideal.empty()) {
      ideal = list_or(cfg.ideal, k, 0.0, "--ideal");
    } else if (weighted != nullptr) {
      ideal = weighted->values().colwise().maxCoeff().transpose();
    } else {
      throw DomainError("smoothpdia needs --ideal");
    }
    const RhoD rho = parse_rho(cfg.rho);
    if (rho.kind() != RhoD::Kind::Finite) throw DomainError("smoothpdia needs a finite rho");
    return AssessmentSpec::smooth_pdia(parse_power(cfg.p.value_or("1")), rho.value(k), ideal);
  }
  throw DomainError("unknown function '" + name + "'");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output) {
    write_file_atomically(*cfg.output, text);
  } else {
    out << text;
  }
}

double epsilon_from_env(const AlternativeSet& Z, const PolyConeD& cone) {
  if (const char* env = std::getenv("CONERANK_EPSILON"); env != nullptr && *env != '\0') {
    const auto v = parse_decimal(env);
    if (!v || !(*v > 0.0)) throw DomainError("CONERANK_EPSILON must be a positive decimal");
    return *v;
  }
  return default_epsilon(Z, cone);
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

// Labels are UTF-8; width counts code points.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

struct Check {
  std::string name;
  std::string detail;
  bool pass;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Check check_tangency() {
  const double s5 = std::sqrt(5.0);
  VectorXd ybar(2);
  ybar << 2.0 * s5 / 5.0, s5 / 5.0;
  const VectorXd r = r_transform(ybar, PolyConeD(2, RhoD::finite(1.0)));
  const double e1 = std::abs(r(0) - s5);
  const double e2 = std::abs(r(1) - 4.0 * s5 / 5.0);
  const double e3 = std::abs(ybar.squaredNorm() - 1.0);
  return {"tangency",
          "rbar = (" + fmt(r(0)) + ", " + fmt(r(1)) + "), |ybar|^2 - 1 = " + fmt(e3),
          e1 <= 1e-12 && e2 <= 1e-12 && e3 <= 1e-12};
}

Check check_unbounded_ratio() {
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const auto points = improperness_witness_circle(deltas);
  bool increasing = true;
  for (std::size_t i = 1; i < points.size(); ++i) increasing &= points[i].ratio > points[i - 1].ratio;
  const double last = points.back().ratio;
  return {"unbounded-ratio",
          std::string("ratios ") + (increasing ? "increasing" : "NOT increasing") +
              ", ratio(1e-6) = " + fmt(last),
          increasing && last > 1e3};
}

Check check_curve() {
  const auto values = curve_example_values(RhoD::neg_reciprocal_k());
  bool pass = std::abs(values[0].value) <= 1e-9;
  std::string detail;
  for (const auto& v : values) {
    // Closed form at rho = -1/3: smallest coordinate minus the mean.
    const double closed = v.point.minCoeff() - v.point.sum() / 3.0;
    pass &= std::abs(v.value - closed) <= 1e-12;
    detail += v.label + " = " + fmt(v.value) + " ";
  }
  return {"balance-curve", detail + "(closed-form agreement)", pass};
}

Check check_balance_contours() {
  std::mt19937_64 rng(20221);
  std::uniform_real_distribution<double> coord(-10.0, 10.0), shift(0.0, 50.0);
  bool pass = true;
  double worst = 0.0;
  for (int k = 2; k <= 5; ++k) {
    const AssessmentSpec glf = AssessmentSpec::gen_leontief(RhoD::neg_reciprocal_k());
    for (int trial = 0; trial < 25; ++trial) {
      VectorXd y(k);
      for (int l = 0; l < k; ++l) y(l) = coord(rng);
      const double t = shift(rng);
      const double drift = std::abs(evaluate(glf, (y.array() + t).matrix()) - evaluate(glf, y));
      const double scale = 1e-12 * (1.0 + t) * k * std::max(1.0, y.cwiseAbs().maxCoeff());
      pass &= drift <= scale;
      worst = std::max(worst, drift);
      pass &= std::abs(evaluate(glf, VectorXd::Constant(k, t))) <= 1e-12;
    }
  }
  return {"shift-invariance", "max drift along 1 = " + fmt(worst) + ", diagonal value 0", pass};
}

}  // namespace

int cmd_efficiency(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Input input = load_input(cfg, err);
    const AlternativeSet& Z = input.data.alternatives;
    const PolyConeD cone(Z.k(), parse_rho(cfg.rho));
    if (cfg.k_check) {
      err << "rho = " << cone.rho().to_string() << " accepted for k = " << Z.k()
          << " (lower bound -1/k = " << fmt(-1.0 / Z.k()) << ")\n";
    }

    EfficiencyReport report = efficient_subset(Z, cone);
    bool consistent = true;
    std::optional<double> epsilon;
    if (!cone.is_plus_infinity() && !cone.is_diagonal_ray()) {
      epsilon = epsilon_from_env(Z, cone);
      const OffsetSet Zb = offset_set(Z, cone, *epsilon);
      for (auto& rec : report.records) {
        const EfficiencyTestResult test = efficiency_test(Zb, rec.label, cone);
        rec.lambda_used = test.lambda_used;
        rec.scalarization_efficient = test.efficient;
        if (test.efficient != rec.efficient) {
          consistent = false;
          err << "inconsistent verdicts for " << rec.label << ": pairwise screen says "
              << yes_no(rec.efficient) << ", scalarization test says " << yes_no(test.efficient)
              << '\n';
        }
        if (rec.efficient) {
          rec.tradeoff_bound_N = tradeoff_constant(Zb, rec.label, cone);
          if (cfg.sigma) {
            rec.certificate = proper_efficiency_certificate(Zb, rec.label, cone, *cfg.sigma);
          } else {
            const auto grid = default_sigma_grid();
            rec.certificate = certify_over_sigma_grid(Zb, rec.label, cone, grid);
          }
        }
      }
    }

    std::string text;
    if (cfg.format == Format::Json) {
      ordered_json j = to_json(report);
      j["epsilon"] = epsilon ? ordered_json(*epsilon) : ordered_json(nullptr);
      j["consistent"] = consistent;
      text = dump(j);
    } else {
      std::size_t width = 5;
      for (const auto& rec : report.records) width = std::max(width, display_width(rec.label));
      std::ostringstream os;
      os << pad("label", width) << "  efficient  test  N           dominator\n";
      for (const auto& rec : report.records) {
        os << pad(rec.label, width) << "  " << pad(yes_no(rec.efficient), 9) << "  "
           << pad(rec.scalarization_efficient ? yes_no(*rec.scalarization_efficient) : "-", 4)
           << "  " << pad(rec.tradeoff_bound_N ? fmt(*rec.tradeoff_bound_N) : "-", 10) << "  "
           << rec.dominator_label.value_or("-") << '\n';
      }
      os << "efficient: " << report.efficient_labels().size() << " of " << report.records.size()
         << '\n';
      text = os.str();
    }
    emit(cfg, text, out);
    return consistent ? kOk : kInconsistent;
  });
}

int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Input input = load_input(cfg, err);
    const AlternativeSet& Z = input.data.alternatives;
    const int k = Z.k();

    std::vector<std::pair<std::string, RankingResult>> rankings;
    ordered_json extras = ordered_json::object();
    if (cfg.preset) {
      if (*cfg.preset != "epi-table1") throw DomainError("unknown preset '" + *cfg.preset + "'");
      if (k != 3) throw DimensionError("preset epi-table1 needs exactly 3 attributes (PCC, HLT, ECO)");
      const WeightVector w = WeightVector::epi();
      const std::vector<std::pair<std::string, AssessmentSpec>> specs{
          {"EPI", AssessmentSpec::mean_order_p(Power::finite(1.0))},
          {"Leontief", AssessmentSpec::gen_leontief(RhoD::finite(0.0))},
          {"rho=-0.25", AssessmentSpec::gen_leontief(RhoD::finite(-0.25))},
          {"PBR", AssessmentSpec::gen_leontief(RhoD::neg_reciprocal_k())},
      };
      for (const auto& [name, spec] : specs) rankings.emplace_back(name, rank(Z, spec, w, name));

      if (input.data.scores) {
        double worst = 0.0;
        std::size_t checked = 0;
        for (std::size_t i = 0; i < Z.size(); ++i) {
          const auto& published = (*input.data.scores)[i];
          if (!published) continue;
          const VectorXd y = Z.row(i);
          worst = std::max(worst, std::abs(epi_composite(y(0), y(1), y(2)) - *published));
          ++checked;
        }
        extras["score_check"] = {{"checked", checked}, {"max_abs_diff", worst}};
      }
    } else {
      if (!cfg.function) throw DomainError("rank needs --function or --preset");
      // The bundled EPI sample defaults to the EPI category weights.
      const WeightVector w = cfg.weights.empty() && !cfg.input
                                 ? WeightVector::epi()
                                 : WeightVector(list_or(cfg.weights, k, 1.0, "--weights"));
      const AlternativeSet weighted = apply_weights(Z, w);
      const AssessmentSpec spec = build_spec(cfg, *cfg.function, k, &weighted);
      rankings.emplace_back(*cfg.function, rank(Z, spec, w, *cfg.function));
    }

    std::vector<std::tuple<std::string, std::string, RankingComparison>> comparisons;
    if (cfg.compare) {
      for (std::size_t i = 0; i < rankings.size(); ++i) {
        for (std::size_t j = i + 1; j < rankings.size(); ++j) {
          comparisons.emplace_back(rankings[i].first, rankings[j].first,
                                   compare_rankings(rankings[i].second, rankings[j].second));
        }
      }
    }

    std::string text;
    if (cfg.format == Format::Json) {
      ordered_json j;
      j["rankings"] = ordered_json::array();
      for (const auto& [name, r] : rankings) j["rankings"].push_back(to_json(r));
      if (cfg.compare) {
        j["comparisons"] = ordered_json::array();
        for (const auto& [a, b, c] : comparisons) {
          ordered_json cj = to_json(c);
          cj["a"] = a;
          cj["b"] = b;
          j["comparisons"].push_back(std::move(cj));
        }
      }
      for (auto& [key, value] : extras.items()) j[key] = value;
      text = dump(j);
    } else {
      text = rankings.size() == 1 ? format_ranking_table(rankings.front().second)
                                  : format_rankings_side_by_side(rankings);
      for (const auto& [a, b, c] : comparisons) {
        text += a + " vs " + b + ": tau_b = " + fmt(c.kendall_tau_b) +
                ", top-5/10/20 overlap = " + fmt(c.top_k_overlap.at(5)) + "/" +
                fmt(c.top_k_overlap.at(10)) + "/" + fmt(c.top_k_overlap.at(20)) +
                ", max displacement = " + std::to_string(c.max_displacement) + "\n";
      }
    }
    emit(cfg, text, out);
    return kOk;
  });
}

int cmd_contours(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.format != Format::Json) throw DomainError("contours are exported as JSON only");
    if (!cfg.function) throw DomainError("contours need --function");
    std::vector<GridAxis> axes;
    for (const auto& spec : cfg.axes) {
      std::vector<double> parts;
      std::stringstream ss(spec);
      for (std::string item; std::getline(ss, item, ':');) {
        const auto v = parse_decimal(item);
        if (!v) throw DomainError("bad --axis '" + spec + "' (expected min:max:step)");
        parts.push_back(*v);
      }
      if (parts.size() != 3) throw DomainError("bad --axis '" + spec + "' (expected min:max:step)");
      axes.push_back({parts[0], parts[1], parts[2]});
    }
    if (axes.size() != 2 && axes.size() != 3) throw DomainError("contours need 2 or 3 --axis flags");
    const AssessmentSpec spec = build_spec(cfg, *cfg.function, static_cast<int>(axes.size()), nullptr);
    emit(cfg, dump(to_json(contour_sample(spec, std::move(axes)))), out);
    return kOk;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<Check> checks{check_tangency(), check_unbounded_ratio(), check_curve(),
                                    check_balance_contours()};
    std::ostringstream os;
    const Check* first_failure = nullptr;
    for (const auto& c : checks) {
      os << c.name << ": " << c.detail << " ... " << (c.pass ? "PASS" : "FAIL") << '\n';
      if (!c.pass && first_failure == nullptr) first_failure = &c;
    }
    if (first_failure != nullptr) os << "first failing check: " << first_failure->name << '\n';
    emit(cfg, os.str(), out);
    return first_failure == nullptr ? kOk : kVerifyFailed;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cone efficiency, assessment functions and balance rankings", "conerank"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "CSV file (bundled EPI sample when omitted)");
    sub->add_option("--label-col", cfg.label_column, "label column name");
    sub->add_option("--attr-cols", cfg.attribute_columns, "attribute columns")->delimiter(',');
    sub->add_option("--score-col", cfg.score_column, "published composite score column");
    sub->add_option("--output", cfg.output, "output file (stdout when omitted)");
    sub->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  };
  auto add_function = [&](CLI::App* sub) {
    sub->add_option("--function", cfg.function, "assessment function")
        ->check(CLI::IsMember({"leontief", "chebyshev", "auglf", "glf", "meanp", "ces", "cobb",
                               "piecewise", "smoothpdia"}));
    sub->add_option("--p", cfg.p, "exponent p (decimal, 0 for the p->0 limit, -inf, inf)");
    sub->add_option("--a", cfg.a, "scale a (ces, cobb)");
    sub->add_option("--b", cfg.b, "cap coefficient b (piecewise)");
    sub->add_option("--coeffs", cfg.coefficients, "CES coefficients")->delimiter(',');
    sub->add_option("--exponents", cfg.exponents, "Cobb-Douglas exponents")->delimiter(',');
    sub->add_option("--ref", cfg.reference, "Chebyshev reference point")->delimiter(',');
    sub->add_option("--ideal", cfg.ideal, "ideal point (smoothpdia)")->delimiter(',');
  };
  auto add_rho = [&](CLI::App* sub) {
    sub->add_option("--rho", cfg.rho, "cone parameter: decimal, -1/k or +inf");
  };

  auto* efficiency = app.add_subcommand("efficiency", "efficiency screen and scalarization test");
  add_io(efficiency);
  add_rho(efficiency);
  efficiency->add_option("--sigma", cfg.sigma, "sigma for the proper-efficiency certificate");
  efficiency->add_flag("--k-check", cfg.k_check, "report the rho bound check");

  auto* rank_cmd = app.add_subcommand("rank", "rank alternatives with an assessment function");
  add_io(rank_cmd);
  add_rho(rank_cmd);
  add_function(rank_cmd);
  rank_cmd->add_option("--weights", cfg.weights, "attribute weights (EPI weights on the bundled sample, else 1)")->delimiter(',');
  rank_cmd->add_option("--preset", cfg.preset, "epi-table1: EPI, rho = 0, -0.25, -1/k rankings");
  rank_cmd->add_flag("--compare", cfg.compare, "compare every pair of rankings");

  auto* contours = app.add_subcommand("contours", "sample a function on a 2-D or 3-D grid");
  add_rho(contours);
  add_function(contours);
  contours->add_option("--axis", cfg.axes, "min:max:step, once per dimension");
  contours->add_option("--output", cfg.output, "output file (stdout when omitted)");
  contours->add_option("--format", format, "json")->check(CLI::IsMember({"json", "table"}));

  auto* verify = app.add_subcommand("verify", "run the built-in numerical checks");
  verify->add_option("--output", cfg.output, "output file (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  cfg.format = format == "table" ? Format::Table : Format::Json;
  if (app.got_subcommand(efficiency)) return cmd_efficiency(cfg, out, err);
  if (app.got_subcommand(rank_cmd)) return cmd_rank(cfg, out, err);
  if (app.got_subcommand(contours)) return cmd_contours(cfg, out, err);
  return cmd_verify(cfg, out, err);
}

}  // namespace conerank::cli
