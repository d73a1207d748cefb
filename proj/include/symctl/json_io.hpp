#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "symctl/catalog.hpp"
#include "symctl/flow.hpp"
#include "symctl/lts.hpp"
#include "symctl/matrix.hpp"

namespace symctl {

/// Malformed user input. what() names the offending field.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// {"n": int, "entries": [[x, ...], ...]}; real matrices use bare numbers,
/// complex ones [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);

/// Accepts bare numbers or [re, im] pairs per entry. Throws InputError
/// naming `field` (e.g. "generators[2].entries[1][0]") on any defect.
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);

std::vector<Matrix> matrices_from_json(const nlohmann::json& j, const std::string& field);

/// {"dim", "depth", "controllable", "target_dim", "stabilized", "basis",
/// "words"}; words print with `labels` (leaf i -> labels[i-1]).
nlohmann::json closure_report_json(const ClosureReport& report, std::span<const int> labels);

nlohmann::json axiom_report_json(const AxiomReport& report);

/// {"word", "t_grid", "residuals", "fitted_order"}.
nlohmann::json convergence_report_json(const ConvergenceReport& report);

/// {"id", "description", "target_dim", "ambient": [{"name", "label",
/// "matrix"}], "generators": [names], "params", "provenance"}.
nlohmann::json catalog_entry_json(const CatalogEntry& entry);

enum class Format { kJson, kText };

/// JSON: key-sorted, two-space indent, trailing newline. Text: one
/// "key: value" line per field; string arrays (bracket words) are printed
/// inline, matrices summarized by count.
std::string render(const nlohmann::json& report, Format format);

}  // namespace symctl
