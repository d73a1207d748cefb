#include "symctl/catalog.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace symctl {

Matrix so3_generator(int k) {
  switch (k) {
    case 1: return Matrix::real({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}});
    case 2: return Matrix::real({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}});
    case 3: return Matrix::real({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}});
    default: throw std::invalid_argument("so(3) generator index must be 1..3");
  }
}

Matrix se3_basis(int k) {
  constexpr int n = 4;
  switch (k) {
    case 1: return Matrix::unit(n, 0, 3);
    case 2: return Matrix::unit(n, 1, 3);
    case 3: return Matrix::unit(n, 2, 3);
    case 4: return Matrix::unit(n, 2, 1) - Matrix::unit(n, 1, 2);
    case 5: return Matrix::unit(n, 0, 2) - Matrix::unit(n, 2, 0);
    // Pure rotation about z; no translation entry.
    case 6: return Matrix::unit(n, 1, 0) - Matrix::unit(n, 0, 1);
    default: throw std::invalid_argument("se(3) basis index must be 1..6");
  }
}

Matrix goe_basis(int k) {
  constexpr int n = 3;
  switch (k) {
    case 1: return Matrix::unit(n, 0, 0);
    case 2: return Matrix::unit(n, 1, 1);
    case 3: return Matrix::unit(n, 2, 2);
    case 4: return Matrix::unit(n, 0, 1) + Matrix::unit(n, 1, 0);
    case 5: return Matrix::unit(n, 0, 2) + Matrix::unit(n, 2, 0);
    case 6: return Matrix::unit(n, 1, 2) + Matrix::unit(n, 2, 1);
    default: throw std::invalid_argument("GOE basis index must be 1..6");
  }
}

Matrix gell_mann(int k) {
  constexpr int n = 3;
  const Complex i(0.0, 1.0);
  const auto sym = [](int r, int c) { return Matrix::unit(n, r, c) + Matrix::unit(n, c, r); };
  const auto asym = [&](int r, int c) {
    return i * (Matrix::unit(n, c, r) - Matrix::unit(n, r, c));
  };
  switch (k) {
    case 1: return sym(0, 1);
    case 2: return asym(0, 1);
    case 3: return Matrix::unit(n, 0, 0) - Matrix::unit(n, 1, 1);
    case 4: return sym(0, 2);
    case 5: return asym(0, 2);
    case 6: return sym(1, 2);
    case 7: return asym(1, 2);
    case 8: {
      Matrix z = Matrix::unit(n, 0, 0) + Matrix::unit(n, 1, 1) - 2.0 * Matrix::unit(n, 2, 2);
      return (1.0 / std::sqrt(3.0)) * z;
    }
    default: throw std::invalid_argument("Gell-Mann index must be 1..8");
  }
}

std::vector<Matrix> CatalogEntry::ambient_matrices() const {
  std::vector<Matrix> out;
  for (const auto& a : ambient) out.push_back(a.matrix);
  return out;
}

std::vector<int> CatalogEntry::ambient_labels() const {
  std::vector<int> out;
  for (const auto& a : ambient) out.push_back(a.label);
  return out;
}

std::vector<Matrix> CatalogEntry::generators() const {
  std::vector<Matrix> out;
  for (int label : generator_labels) out.push_back(by_label(label).matrix);
  return out;
}

const NamedMatrix& CatalogEntry::by_label(int label) const {
  const auto it = std::find_if(ambient.begin(), ambient.end(),
                               [&](const NamedMatrix& m) { return m.label == label; });
  if (it == ambient.end()) {
    throw std::invalid_argument(id + ": no basis element with label " + std::to_string(label));
  }
  return *it;
}

const NamedMatrix& CatalogEntry::by_name(std::string_view name) const {
  for (const auto& m : ambient) {
    if (m.name.size() == name.size() &&
        std::equal(name.begin(), name.end(), m.name.begin(), [](char a, char b) {
          return std::tolower(static_cast<unsigned char>(a)) ==
                 std::tolower(static_cast<unsigned char>(b));
        })) {
      return m;
    }
  }
  if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    return by_label(std::stoi(std::string(name)));
  }
  throw std::invalid_argument(id + ": unknown basis element '" + std::string(name) + "'");
}

namespace {

NamedMatrix named(const std::string& symbol, int k, Matrix m) {
  return {symbol + std::to_string(k), k, std::move(m)};
}

std::vector<NamedMatrix> se3_subset(std::initializer_list<int> ks) {
  std::vector<NamedMatrix> out;
  for (int k : ks) out.push_back(named("e", k, se3_basis(k)));
  return out;
}

BracketClaim claim(int a, int b, int c, Combination value) {
  return {{a, b, c}, std::move(value)};
}

constexpr const char* kSe3Note =
    "se(3) basis: e1..e3 translations, e4..e6 rotations about x, y, z.";
constexpr const char* kE6Note =
    "e6 is the pure z-rotation generator; the source listing shows a stray 1 at entry (1,4), "
    "inconsistent with e4 and e5.";
constexpr const char* kSe3ClassNote =
    "One of the seven conjugacy classes of Lie triple systems of se(3), in source listing order.";

struct Se3Class {
  const char* id;
  std::vector<int> basis;  // 0 stands for e4 + p e1
  const char* description;
};

const std::vector<Se3Class>& se3_classes() {
  static const std::vector<Se3Class> classes = {
      {"se3_lts_1", {3, 4}, "se(3) LTS {e3, e4}"},
      {"se3_lts_2", {3, 0}, "se(3) LTS {e3, e4 + p e1}, screw of pitch p"},
      {"se3_lts_3", {4, 5}, "se(3) LTS {e4, e5}"},
      {"se3_lts_4", {1, 3, 4}, "se(3) LTS {e1, e3, e4}"},
      {"se3_lts_5", {3, 4, 5}, "se(3) LTS {e3, e4, e5}"},
      {"se3_lts_6", {1, 2, 4, 5}, "se(3) LTS {e1, e2, e4, e5} (submanifold M1)"},
      {"se3_lts_7", {1, 2, 3, 4, 5}, "se(3) LTS {e1, e2, e3, e4, e5} (submanifold M2)"},
  };
  return classes;
}

CatalogEntry so3_entry() {
  CatalogEntry e;
  e.id = "so3_mod_so2";
  e.description = "so(3)/so(2), tangent space of S^2 = SO(3)/SO(2)";
  e.ambient = {named("X", 1, so3_generator(1)), named("X", 2, so3_generator(2))};
  e.generator_labels = {1, 2};
  e.target_dim = 2;
  e.provenance = {"X1, X2, X3 are the infinitesimal rotations about x, y, z; X3 spans so(2).",
                  "[[X1,X2],X1] = X2 and [[X1,X2],X2] = -X1."};
  e.claims = {claim(1, 2, 1, {{{1.0, 2}}}), claim(1, 2, 2, {{{-1.0, 1}}})};
  e.claimed_controllable = true;
  return e;
}

CatalogEntry se3_full_entry() {
  CatalogEntry e;
  e.id = "se3_full";
  e.description = "se(3), the full Lie algebra of rigid motions";
  e.ambient = se3_subset({1, 2, 3, 4, 5, 6});
  e.generator_labels = {1, 2, 3, 4, 5, 6};
  e.target_dim = 6;
  e.provenance = {kSe3Note, kE6Note};
  return e;
}

CatalogEntry se3_class_entry(const Se3Class& c, const std::map<std::string, double>& params) {
  CatalogEntry e;
  e.id = c.id;
  e.description = c.description;
  e.provenance = {kSe3Note, kSe3ClassNote};
  for (int k : c.basis) {
    if (k != 0) {
      e.ambient.push_back(named("e", k, se3_basis(k)));
      continue;
    }
    const auto it = params.find("pitch");
    if (it == params.end()) {
      throw std::invalid_argument(std::string(c.id) + " requires parameter 'pitch'");
    }
    if (!std::isfinite(it->second)) throw std::invalid_argument("pitch must be finite");
    e.params["pitch"] = it->second;
    e.ambient.push_back({"e4+pe1", 4, se3_basis(4) + it->second * se3_basis(1)});
  }
  e.target_dim = static_cast<int>(e.ambient.size());
  e.generator_labels = e.ambient_labels();
  if (e.id == "se3_lts_6") {
    e.generator_labels = {2, 4, 5};
    e.claims = {claim(2, 4, 5, {{{1.0, 1}}})};
    e.claimed_controllable = true;
    e.provenance.push_back("Three controls {e2, e4, e5} suffice since [[e2,e4],e5] = e1.");
  } else if (e.id == "se3_lts_7") {
    e.generator_labels = {1, 3, 4, 5};
    e.claims = {claim(1, 5, 4, {{{1.0, 2}}})};
    e.claimed_controllable = true;
    e.provenance.push_back("Four controls {e1, e3, e4, e5} suffice since [[e1,e5],e4] = e2.");
  }
  return e;
}

CatalogEntry goe_entry() {
  CatalogEntry e;
  e.id = "goe_sym3";
  e.description = "3x3 real symmetric matrices, LTS of positive definite matrices (GOE)";
  for (int k = 1; k <= 6; ++k) e.ambient.push_back(named("a", k, goe_basis(k)));
  e.generator_labels = {1, 3, 4};
  e.alternative_generators = {{1, 4, 6}};
  e.target_dim = 6;
  e.provenance = {
      "a1..a3 diagonal units, a4 = E12+E21, a5 = E13+E31, a6 = E23+E32.",
      "a6 corrected to E23+E32; the source listing shows a stray (2,1) entry, which is not "
      "symmetric.",
      "Suggested controls {a1, a3, a4} are published as controllable, but their closure is the "
      "4-dimensional {1,2}+{3} block-diagonal subspace: index 3 never couples.",
      "{a1, a4, a6} generates all six symmetric directions (verified alternative).",
  };
  e.claims = {claim(1, 4, 4, {{{-2.0, 2}}}), claim(2, 4, 4, {{{1.0, 6}}}),
              claim(2, 6, 4, {{{1.0, 5}}})};
  e.claimed_controllable = true;
  return e;
}

CatalogEntry coe_entry() {
  CatalogEntry e;
  e.id = "coe_su3_mod_so3";
  e.description = "su(3)/so(3), tangent space of SU(3)/SO(3) (COE)";
  for (int k : {1, 3, 4, 6, 8}) e.ambient.push_back(named("Z", k, gell_mann(k)));
  e.generator_labels = {1, 3, 4, 8};
  e.target_dim = 5;
  e.provenance = {
      "Z1..Z8 are the Gell-Mann matrices; Z2, Z5, Z7 span so(3).",
      "Z8 carries the factor 1/sqrt(3) and is instantiated in floating point.",
      "Four controls {Z1, Z3, Z4, Z8} suffice since [[Z1,Z3],Z4] = 2 Z6.",
  };
  e.claims = {claim(1, 3, 4, {{{2.0, 6}}})};
  e.claimed_controllable = true;
  return e;
}

}  // namespace

CatalogEntry catalog_get(std::string_view id, const std::map<std::string, double>& params) {
  if (id == "so3_mod_so2") return so3_entry();
  if (id == "se3_full") return se3_full_entry();
  if (id == "goe_sym3") return goe_entry();
  if (id == "coe_su3_mod_so3") return coe_entry();
  for (const Se3Class& c : se3_classes()) {
    if (id == c.id) return se3_class_entry(c, params);
  }
  throw std::invalid_argument("unknown catalog id '" + std::string(id) + "'");
}

std::vector<CatalogListing> catalog_list() {
  std::vector<CatalogListing> out = {
      {"so3_mod_so2", 2, "so(3)/so(2), tangent space of S^2 = SO(3)/SO(2)"},
      {"se3_full", 6, "se(3), the full Lie algebra of rigid motions"},
  };
  for (const Se3Class& c : se3_classes()) {
    out.push_back({c.id, static_cast<int>(c.basis.size()), c.description});
  }
  out.push_back({"goe_sym3", 6, "3x3 real symmetric matrices, LTS of positive definite matrices (GOE)"});
  out.push_back({"coe_su3_mod_so3", 5, "su(3)/so(3), tangent space of SU(3)/SO(3) (COE)"});
  return out;
}

std::vector<double> coordinates(const Matrix& m, std::span<const Matrix> basis) {
  if (basis.empty()) return {};
  const auto rows = static_cast<Eigen::Index>(2 * m.size());
  Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::vector<double> v = real_vectorize(basis[k]);
    for (Eigen::Index r = 0; r < rows; ++r) a(r, static_cast<Eigen::Index>(k)) = v[static_cast<std::size_t>(r)];
  }
  const std::vector<double> target = real_vectorize(m);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(target.data(), rows);
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  return {x.data(), x.data() + x.size()};
}

std::string format_combination(std::span<const double> coeffs, std::span<const std::string> names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    double c = coeffs[k];
    if (std::abs(c) <= 1e-12) continue;
    const double rounded = std::round(c);
    if (std::abs(c - rounded) <= 1e-12) c = rounded;
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1.0) {
      if (mag == std::round(mag)) {
        os << static_cast<long long>(mag);
      } else {
        os << mag << "*";
      }
    }
    os << names[k];
    first = false;
  }
  return first ? "0" : os.str();
}

std::string format_combination(const Combination& c, const CatalogEntry& entry) {
  std::vector<double> coeffs;
  std::vector<std::string> names;
  for (const auto& [coeff, label] : c.terms) {
    coeffs.push_back(coeff);
    names.push_back(entry.by_label(label).name);
  }
  return format_combination(coeffs, names);
}

Matrix evaluate_combination(const Combination& c, const CatalogEntry& entry) {
  Matrix out(entry.ambient.front().matrix.dim());
  for (const auto& [coeff, label] : c.terms) out += coeff * entry.by_label(label).matrix;
  return out;
}

}  // namespace symctl
