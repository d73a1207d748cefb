#include "symctl/json_io.hpp"

#include <cmath>
#include <sstream>

namespace symctl {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  const bool real = m.is_real();
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) {
      const Complex z = m(r, c);
      if (real) {
        row.push_back(z.real());
      } else {
        row.push_back(json::array({z.real(), z.imag()}));
      }
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", m.dim()}, {"entries", std::move(rows)}};
}

namespace {

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InputError(field, "entry is not finite");
  return x;
}

}  // namespace

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field, "expected a matrix object");
  if (!j.contains("n")) throw InputError(field + ".n", "missing");
  if (!j.at("n").is_number_integer()) throw InputError(field + ".n", "expected an integer");
  const int n = j.at("n").get<int>();
  if (n < kMinDim || n > kMaxDim) {
    throw InputError(field + ".n", "dimension " + std::to_string(n) + " outside [2, 16]");
  }
  if (!j.contains("entries")) throw InputError(field + ".entries", "missing");
  const json& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
    throw InputError(field + ".entries", "expected " + std::to_string(n) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(static_cast<std::size_t>(n * n));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string row_field = field + ".entries[" + std::to_string(r) + "]";
    const json& row = rows[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw InputError(row_field, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string entry_field = row_field + "[" + std::to_string(c) + "]";
      const json& x = row[c];
      if (x.is_array()) {
        if (x.size() != 2) throw InputError(entry_field, "expected [re, im]");
        entries.emplace_back(finite_number(x[0], entry_field), finite_number(x[1], entry_field));
      } else {
        entries.emplace_back(finite_number(x, entry_field), 0.0);
      }
    }
  }
  return Matrix(n, std::move(entries));
}

std::vector<Matrix> matrices_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array of matrices");
  if (j.empty()) throw InputError(field, "must not be empty");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    if (out.back().dim() != out.front().dim()) {
      throw InputError(field + "[" + std::to_string(i) + "]", "dimension mismatch");
    }
  }
  return out;
}

json closure_report_json(const ClosureReport& report, std::span<const int> labels) {
  json basis = json::array();
  for (const Matrix& m : report.basis.members()) basis.push_back(matrix_to_json(m));
  json words = json::array();
  for (const BracketWord& w : report.words) words.push_back(w.to_string(labels));
  return json{{"dim", report.dim},
              {"depth", report.depth},
              {"controllable", report.controllable},
              {"target_dim", report.target_dim},
              {"stabilized", report.stabilized},
              {"basis", std::move(basis)},
              {"words", std::move(words)}};
}

json axiom_report_json(const AxiomReport& report) {
  return json{{"alternating", {{"passed", report.alternating},
                               {"max_residual", report.alternating_residual}}},
              {"cyclic", {{"passed", report.cyclic}, {"max_residual", report.cyclic_residual}}},
              {"derivation", {{"passed", report.derivation},
                              {"checked", report.derivation_checked},
                              {"max_residual", report.derivation_residual}}},
              {"all_passed", report.all_passed()}};
}

json convergence_report_json(const ConvergenceReport& report) {
  return json{{"word", report.word},
              {"t_grid", report.t_grid},
              {"residuals", report.residuals},
              {"fitted_order", report.fitted_order},
              {"exact", report.exact}};
}

json catalog_entry_json(const CatalogEntry& entry) {
  json ambient = json::array();
  for (const NamedMatrix& m : entry.ambient) {
    ambient.push_back({{"name", m.name}, {"label", m.label}, {"matrix", matrix_to_json(m.matrix)}});
  }
  json generators = json::array();
  for (int label : entry.generator_labels) generators.push_back(entry.by_label(label).name);
  json alternatives = json::array();
  for (const auto& alt : entry.alternative_generators) {
    json names = json::array();
    for (int label : alt) names.push_back(entry.by_label(label).name);
    alternatives.push_back(std::move(names));
  }
  return json{{"id", entry.id},
              {"description", entry.description},
              {"target_dim", entry.target_dim},
              {"ambient", std::move(ambient)},
              {"generators", std::move(generators)},
              {"alternative_generators", std::move(alternatives)},
              {"params", entry.params},
              {"provenance", entry.provenance}};
}

namespace {

bool is_matrix(const json& j) { return j.is_object() && j.contains("n") && j.contains("entries"); }

bool all_scalars(const json& j) {
  for (const json& x : j) {
    if (x.is_structured()) return false;
  }
  return true;
}

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_text(const json& j, const std::string& indent, std::ostringstream& os) {
  for (const auto& [key, value] : j.items()) {
    os << indent << key << ":";
    if (value.is_object() && !is_matrix(value)) {
      os << "\n";
      render_text(value, indent + "  ", os);
    } else if (is_matrix(value)) {
      os << " <" << value["n"].get<int>() << "x" << value["n"].get<int>() << " matrix>\n";
    } else if (value.is_array() && all_scalars(value)) {
      if (value.empty()) os << " (none)";
      bool first = true;
      for (const json& x : value) {
        os << (first ? " " : ", ") << scalar_text(x);
        first = false;
      }
      os << "\n";
    } else if (value.is_array()) {
      os << "\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        const json& x = value[i];
        if (is_matrix(x)) {
          os << indent << "  - <" << x["n"].get<int>() << "x" << x["n"].get<int>() << " matrix>\n";
        } else if (x.is_object()) {
          os << indent << "  -\n";
          render_text(x, indent + "    ", os);
        } else {
          os << indent << "  - " << x.dump() << "\n";
        }
      }
    } else {
      os << " " << scalar_text(value) << "\n";
    }
  }
}

}  // namespace

std::string render(const json& report, Format format) {
  if (format == Format::kJson) return report.dump(2) + "\n";
  std::ostringstream os;
  render_text(report, "", os);
  return os.str();
}

}  // namespace symctl
