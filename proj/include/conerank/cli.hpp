#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace conerank::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kValidationError = 2,
  kInconsistent = 3,
  kVerifyFailed = 4,
};

enum class Command { Efficiency, Rank, Contours, Verify };
enum class Format { Json, Table };

struct RunConfig {
  Command command = Command::Verify;
  std::optional<std::string> input;  // bundled EPI sample when absent
  std::string label_column = "country";
  std::vector<std::string> attribute_columns;  // all non-label columns when empty
  std::optional<std::string> score_column;
  std::string rho = "0";  // decimal, "-1/k" or "+inf"
  std::optional<double> sigma;
  std::optional<std::string> function;
  std::optional<std::string> p;
  std::optional<double> a;
  std::optional<double> b;
  std::vector<double> coefficients;
  std::vector<double> exponents;
  std::vector<double> reference;
  std::vector<double> ideal;
  std::vector<double> weights;
  std::optional<std::string> preset;
  bool compare = false;
  bool k_check = false;
  std::vector<std::string> axes;  // "min:max:step"
  std::optional<std::string> output;
  Format format = Format::Json;
};

int cmd_efficiency(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_contours(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conerank::cli
