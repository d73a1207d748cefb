#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symctl/basis.hpp"
#include "symctl/json_io.hpp"
#include "symctl/lts.hpp"

namespace symctl::cli {

enum class Command { kCheck, kClose, kMinControls, kVerifyAxioms, kFlowCert, kCatalog };
enum class FlowCertKind { kGamma, kWord, kPhi };
enum class CatalogAction { kList, kExport };

/// Exit codes: the verdict, or a usage/input problem.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::kCheck;
  FlowCertKind flow_kind = FlowCertKind::kGamma;
  CatalogAction catalog_action = CatalogAction::kList;

  std::string catalog_id;               ///< --catalog, or the id for `catalog export`
  std::string file;                     ///< --file
  std::vector<std::string> generators;  ///< --generators a1,a3,a4
  std::optional<double> pitch;
  std::optional<int> target_dim;
  double tol = kDefaultTol;
  int max_depth = 0;
  SearchMode mode = SearchMode::kExhaustive;
  std::vector<double> t_grid;
  double h = 1e-5;
  std::string word;
  bool lift_cap = false;
  bool richardson = false;
  bool literal_words = false;
  bool paper_mode = false;
  Format format = Format::kJson;
  std::string output;  ///< empty: stdout
};

/// Throws InputError if tol <= 0 or t_grid is not strictly decreasing and
/// positive.
void validate(const RunConfig& config);

struct RunResult {
  int exit_code = kExitOk;
  std::string report;  ///< rendered per config.format
};

/// Executes one command. Input problems become exit code 2 with an error
/// report; nothing is thrown.
RunResult run(const RunConfig& config);

/// Parses argv (CLI11), applies LTS_TOL, runs, and writes the report to
/// --output or `out`. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symctl::cli
