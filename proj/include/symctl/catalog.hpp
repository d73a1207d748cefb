#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symctl/matrix.hpp"

namespace symctl {

/// A basis element with its conventional name ("e4", "a6", "Z8") and the
/// integer label used when printing bracket words ("[[2,4],5]").
struct NamedMatrix {
  std::string name;
  int label = 0;
  Matrix matrix;
};

/// A linear combination sum_k coeff_k * basis(label_k).
struct Combination {
  std::vector<std::pair<double, int>> terms;
};

/// A published bracket identity [[a,b],c] = value, kept so reports can show
/// it next to the computed bracket.
struct BracketClaim {
  std::array<int, 3> operands{};  ///< labels
  Combination value;
};

struct CatalogEntry {
  std::string id;
  std::string description;
  std::vector<NamedMatrix> ambient;     ///< full LTS basis
  std::vector<int> generator_labels;    ///< suggested controls
  std::vector<std::vector<int>> alternative_generators;
  int target_dim = 0;
  std::map<std::string, double> params;
  std::vector<std::string> provenance;
  std::vector<BracketClaim> claims;
  /// Published verdict for the suggested controls, when one exists.
  std::optional<bool> claimed_controllable;

  std::vector<Matrix> ambient_matrices() const;
  std::vector<int> ambient_labels() const;
  std::vector<Matrix> generators() const;
  /// Throws std::invalid_argument for a label outside the ambient basis.
  const NamedMatrix& by_label(int label) const;
  /// Accepts "a4", "A4" or "4".
  const NamedMatrix& by_name(std::string_view name) const;
};

struct CatalogListing {
  std::string id;
  int dimension = 0;
  std::string description;
};

/// Instantiates a catalog entry. se3_lts_2 requires params["pitch"].
/// Throws std::invalid_argument for an unknown id or a missing parameter.
CatalogEntry catalog_get(std::string_view id, const std::map<std::string, double>& params = {});

/// All ids in a fixed order.
std::vector<CatalogListing> catalog_list();

/// Named generators of the underlying algebras.
Matrix so3_generator(int k);   ///< X1..X3
Matrix se3_basis(int k);       ///< e1..e6
Matrix goe_basis(int k);       ///< a1..a6
Matrix gell_mann(int k);       ///< Z1..Z8

/// Least-squares coordinates of m in the real span of basis.
std::vector<double> coordinates(const Matrix& m, std::span<const Matrix> basis);

/// "2a1 - 2a2", "-a5", "0". Coefficients within 1e-12 of an integer print as
/// integers.
std::string format_combination(std::span<const double> coeffs, std::span<const std::string> names);
std::string format_combination(const Combination& c, const CatalogEntry& entry);

Matrix evaluate_combination(const Combination& c, const CatalogEntry& entry);

}  // namespace symctl
