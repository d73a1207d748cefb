#include "symctl/flow.hpp"

#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <stdexcept>

namespace symctl {

void FlowProgram::append(FlowStep step) {
  if (step.generator.dim() != base_.dim()) {
    throw std::invalid_argument("flow step dimension does not match the base point");
  }
  if (!std::isfinite(step.duration)) throw std::invalid_argument("flow duration must be finite");
  steps_.push_back(std::move(step));
}

void FlowProgram::append(const FlowProgram& tail) {
  for (const FlowStep& s : tail.steps_) append(s);
}

FlowProgram FlowProgram::reversed() const {
  FlowProgram out(base_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    out.steps_.push_back({it->generator, -it->duration, it->generator_index});
  }
  return out;
}

Matrix FlowProgram::evaluate() const {
  Matrix x = base_;
  for (const FlowStep& s : steps_) x = x * expm(s.generator, s.duration);
  return x;
}

Matrix flow(const Matrix& a, double t, const Matrix& x) {
  if (a.dim() != x.dim()) throw std::invalid_argument("flow: dimension mismatch");
  return x * expm(a, t);
}

Matrix gamma_curve(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x, double t) {
  if (a.dim() != b.dim() || a.dim() != c.dim() || a.dim() != x.dim()) {
    throw std::invalid_argument("gamma_curve: dimension mismatch");
  }
  const Matrix ea = expm(a, t), eb = expm(b, t), ec = expm(c, t);
  const Matrix ea_inv = expm(a, -t), eb_inv = expm(b, -t), ec_inv = expm(c, -t);
  Matrix y = x;
  for (const Matrix* f : {&ea, &eb, &ea_inv, &eb_inv, &ec, &eb, &ea, &eb_inv, &ea_inv, &ec_inv}) {
    y = y * *f;
  }
  return y;
}

Matrix double_bracket_estimate(const Matrix& a, const Matrix& b, const Matrix& c,
                               const Matrix& x, double t) {
  if (t == 0.0) throw std::invalid_argument("double_bracket_estimate: t must be nonzero");
  return (1.0 / (t * t * t)) * (gamma_curve(a, b, c, x, t) - x);
}

namespace {

// Factor order of a node [[I1,I2],I3], first applied first: child slot
// (0, 1, 2) and whether the factor is a backward one.
struct Factor {
  int child;
  bool backward;
};
constexpr std::array<Factor, 10> kNodeFactors{{{0, false},
                                               {1, false},
                                               {0, true},
                                               {1, true},
                                               {2, false},
                                               {1, false},
                                               {0, false},
                                               {1, true},
                                               {0, true},
                                               {2, true}}};

const BracketWord& child(const BracketWord& w, int slot) {
  return slot == 0 ? w.left() : slot == 1 ? w.mid() : w.right();
}

// Feeds the primitive flows of Psi^I_t (or its inverse) to sink in order.
template <typename Sink>
void emit(const BracketWord& word, double t, bool inverted, std::span<const Matrix> generators,
          WordFlowConvention convention, Sink& sink) {
  if (word.is_leaf()) {
    sink(generators[static_cast<std::size_t>(word.index() - 1)], inverted ? -t : t, word.index());
    return;
  }
  const auto visit = [&](const Factor& f, bool flip) {
    const bool backward = f.backward != flip;
    const BracketWord& sub = child(word, f.child);
    if (convention == WordFlowConvention::kLiteral) {
      emit(sub, backward ? -t : t, false, generators, convention, sink);
    } else {
      emit(sub, t, backward, generators, convention, sink);
    }
  };
  if (!inverted) {
    for (const Factor& f : kNodeFactors) visit(f, false);
  } else {
    for (auto it = kNodeFactors.rbegin(); it != kNodeFactors.rend(); ++it) visit(*it, true);
  }
}

void check_word(const BracketWord& word, const Matrix& x, std::span<const Matrix> generators) {
  if (static_cast<std::size_t>(word.max_index()) > generators.size()) {
    throw std::out_of_range("word " + word.to_string() + " references generator " +
                            std::to_string(word.max_index()) + " of " +
                            std::to_string(generators.size()));
  }
  for (const Matrix& g : generators) {
    if (g.dim() != x.dim()) throw std::invalid_argument("generator and base dimensions differ");
  }
}

}  // namespace

FlowProgram word_flow_program(const BracketWord& word, double t, const Matrix& x,
                              std::span<const Matrix> generators, WordFlowConvention convention) {
  check_word(word, x, generators);
  FlowProgram program(x);
  auto sink = [&](const Matrix& g, double d, int index) { program.append({g, d, index}); };
  emit(word, t, false, generators, convention, sink);
  return program;
}

Matrix word_flow(const BracketWord& word, double t, const Matrix& x,
                 std::span<const Matrix> generators, WordFlowConvention convention) {
  check_word(word, x, generators);
  Matrix y = x;
  auto sink = [&](const Matrix& g, double d, int) { y = y * expm(g, d); };
  emit(word, t, false, generators, convention, sink);
  return y;
}

double normalized_time(double t, int length) {
  if (length < 1 || length % 2 == 0) throw std::invalid_argument("word length must be odd");
  if (length == 1 || t == 0.0) return t;
  const double a = std::abs(t);
  double r = length == 3 ? std::cbrt(a) : std::pow(a, 1.0 / length);
  // libm roots can be one ulp off; pick the neighbour whose power is closest
  // so exact powers (e.g. 0.125) get exact roots.
  const auto miss = [&](double c) {
    long double p = 1.0L;
    for (int i = 0; i < length; ++i) p *= c;
    return std::abs(p - static_cast<long double>(a));
  };
  for (double c : {std::nextafter(r, 0.0), std::nextafter(r, INFINITY)}) {
    if (miss(c) < miss(r)) r = c;
  }
  return t < 0 ? -r : r;
}

Matrix normalized_word_flow(const BracketWord& word, double t, const Matrix& x,
                            std::span<const Matrix> generators, WordFlowConvention convention) {
  return word_flow(word, normalized_time(t, word.length()), x, generators, convention);
}

Matrix phi_map(std::span<const BracketWord> words, std::span<const double> times,
               const Matrix& x, std::span<const Matrix> generators,
               WordFlowConvention convention) {
  if (words.size() != times.size()) throw std::invalid_argument("phi_map: one time per word");
  Matrix y = x;
  for (std::size_t k = 0; k < words.size(); ++k) {
    y = normalized_word_flow(words[k], times[k], y, generators, convention);
  }
  return y;
}

JacobianRank phi_jacobian_rank(std::span<const BracketWord> words, const Matrix& x,
                               std::span<const Matrix> generators, double h, double tol,
                               WordFlowConvention convention) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("phi_jacobian_rank: h must be positive");
  JacobianRank out;
  if (words.empty()) return out;

  Matrix to_base = Matrix::identity(x.dim());
  try {
    to_base = inverse(x);
  } catch (const std::domain_error&) {
    // Singular base point: use raw ambient coordinates.
  }

  std::vector<double> times(words.size(), 0.0);
  const auto phi = [&](std::size_t k, double s) {
    times.assign(words.size(), 0.0);
    times[k] = s;
    return phi_map(words, times, x, generators, convention);
  };

  const auto rows = static_cast<Eigen::Index>(2 * x.size());
  Eigen::MatrixXd jac(rows, static_cast<Eigen::Index>(words.size()));
  for (std::size_t k = 0; k < words.size(); ++k) {
    const Matrix column = (1.0 / (2.0 * h)) * (phi(k, h) - phi(k, -h));
    std::vector<double> v = real_vectorize(to_base * column);
    for (Eigen::Index r = 0; r < rows; ++r) jac(r, static_cast<Eigen::Index>(k)) = v[static_cast<std::size_t>(r)];
    out.jacobian.push_back(std::move(v));
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const Eigen::VectorXd& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  for (double s : out.singular_values) {
    if (top > 0.0 && s > tol * top) {
      ++out.rank;
      out.smallest_retained_ratio = s / top;
    }
  }
  return out;
}

double fitted_order(std::span<const double> t_grid, std::span<const double> residuals) {
  if (t_grid.size() != residuals.size() || t_grid.size() < 2) {
    throw std::invalid_argument("fitted_order: need matching grids of length >= 2");
  }
  const auto n = static_cast<double>(t_grid.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || !(residuals[i] > 0.0)) {
      throw std::invalid_argument("fitted_order: values must be positive");
    }
    const double lx = std::log(t_grid[i]);
    const double ly = std::log(residuals[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fitted_order: degenerate t grid");
  return (n * sxy - sx * sy) / denom;
}

namespace {

constexpr double kExactResidual = 1e-12;

template <typename Estimate>
ConvergenceReport convergence(std::string word, const Matrix& oracle,
                              std::span<const double> t_grid, bool richardson,
                              const Estimate& estimate) {
  ConvergenceReport report{
      .word = std::move(word), .t_grid = {t_grid.begin(), t_grid.end()}, .residuals = {}};
  for (double t : t_grid) {
    Matrix e = estimate(t);
    if (richardson) e = 2.0 * estimate(t / 2.0) - e;
    report.residuals.push_back(distance(e, oracle));
  }
  const double floor = kExactResidual * std::max(1.0, oracle.frobenius_norm());
  report.exact = std::all_of(report.residuals.begin(), report.residuals.end(),
                             [&](double r) { return r <= floor; });
  if (!report.exact && report.residuals.size() >= 2 &&
      std::all_of(report.residuals.begin(), report.residuals.end(), [](double r) { return r > 0.0; })) {
    report.fitted_order = fitted_order(report.t_grid, report.residuals);
  }
  return report;
}

}  // namespace

ConvergenceReport gamma_convergence(const Matrix& a, const Matrix& b, const Matrix& c,
                                    const Matrix& x, std::span<const double> t_grid,
                                    bool richardson) {
  const Matrix oracle = x * double_bracket(a, b, c);
  return convergence("[[1,2],3]", oracle, t_grid, richardson,
                     [&](double t) { return double_bracket_estimate(a, b, c, x, t); });
}

ConvergenceReport word_tangency(const BracketWord& word, const Matrix& x,
                                std::span<const Matrix> generators,
                                std::span<const double> t_grid, bool richardson,
                                WordFlowConvention convention) {
  const Matrix oracle = x * word.evaluate(generators);
  const int len = word.length();
  return convergence(word.to_string(), oracle, t_grid, richardson, [&](double t) {
    return (1.0 / std::pow(t, len)) * (word_flow(word, t, x, generators, convention) - x);
  });
}

}  // namespace symctl
