#include "symctl/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace symctl {

namespace detail {

namespace {

constexpr int kMaxDyadicShift = 40;
constexpr double kIntegerLimit = 4611686018427387904.0;  // 2^62

__extension__ using Wide = __int128;

int dyadic_shift(double x) {
  for (int k = 0; k <= kMaxDyadicShift; ++k) {
    const double scaled = std::ldexp(x, k);
    if (std::trunc(scaled) == scaled) return k;
  }
  return -1;
}

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    const Wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

void normalize(std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (std::int64_t x : v) g = std::gcd(g, x);
  if (g > 1) {
    for (std::int64_t& x : v) x /= g;
  }
}

}  // namespace

std::optional<std::vector<std::int64_t>> integer_image(const Matrix& m) {
  const std::vector<double> v = real_vectorize(m);
  int shift = 0;
  for (double x : v) {
    const int k = dyadic_shift(x);
    if (k < 0) return std::nullopt;
    shift = std::max(shift, k);
  }
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double scaled = std::ldexp(v[i], shift);
    if (std::abs(scaled) >= kIntegerLimit) return std::nullopt;
    out[i] = static_cast<std::int64_t>(scaled);
  }
  normalize(out);
  return out;
}

std::optional<std::vector<std::int64_t>> ExactEchelon::reduce(std::vector<std::int64_t> v) const {
  std::vector<Wide> work(v.size());
  for (const Row& row : rows_) {
    const std::int64_t coeff = v[row.pivot];
    if (coeff == 0) continue;
    const std::int64_t lead = row.values[row.pivot];
    Wide g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      work[i] = static_cast<Wide>(lead) * v[i] - static_cast<Wide>(coeff) * row.values[i];
      g = wide_gcd(g, work[i]);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Wide x = g > 1 ? work[i] / g : work[i];
      if (wide_abs(x) >= static_cast<Wide>(kIntegerLimit)) return std::nullopt;
      v[i] = static_cast<std::int64_t>(x);
    }
  }
  return v;
}

void ExactEchelon::push(std::vector<std::int64_t> row) {
  const auto it = std::find_if(row.begin(), row.end(), [](std::int64_t x) { return x != 0; });
  if (it == row.end()) throw std::logic_error("ExactEchelon::push: zero row");
  const auto pivot = static_cast<std::size_t>(it - row.begin());
  if (row[pivot] < 0) {
    for (std::int64_t& x : row) x = -x;
  }
  rows_.push_back({pivot, std::move(row)});
}

}  // namespace detail

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

bool is_zero_vector(const std::vector<std::int64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

BasisSet::BasisSet(int dim, double tol, double initial_scale)
    : dim_(dim), tol_(tol), scale_(initial_scale) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (dim < kMinDim || dim > kMaxDim) throw std::invalid_argument("basis dimension out of range");
}

std::vector<double> BasisSet::project_out(std::vector<double> v) const {
  // Two modified Gram-Schmidt passes.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : ortho_) {
      const double c = dot(q, v);
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
  }
  return v;
}

bool BasisSet::add(const Matrix& m) { return absorb(m, true); }

bool BasisSet::add_if_independent(const Matrix& m) { return absorb(m, false); }

bool BasisSet::absorb(const Matrix& m, bool keep_dependent) {
  if (m.dim() != dim_) throw std::invalid_argument("BasisSet::add: dimension mismatch");
  const double old_scale = scale_;
  const double norm = m.frobenius_norm();
  scale_ = std::max(scale_, norm);

  std::vector<double> residual = project_out(real_vectorize(m));
  const double rnorm = norm2(residual);

  bool raises = false;
  std::optional<std::vector<std::int64_t>> reduced;
  if (exact_) {
    if (auto image = detail::integer_image(m)) reduced = echelon_.reduce(std::move(*image));
    if (!reduced) exact_ = false;
  }
  if (reduced) {
    raises = !is_zero_vector(*reduced);
    if (raises && rnorm == 0.0) {
      // Exactly independent but numerically invisible; give up exactness.
      exact_ = false;
      raises = false;
    }
  } else {
    raises = rnorm > tol_ * scale_;
  }

  if (!raises) {
    if (keep_dependent) {
      members_.push_back(m);
    } else {
      scale_ = old_scale;
    }
    return false;
  }
  members_.push_back(m);
  if (exact_ && reduced) echelon_.push(std::move(*reduced));
  for (double& x : residual) x /= rnorm;
  ortho_.push_back(std::move(residual));
  independent_.push_back(members_.size() - 1);
  return true;
}

Membership BasisSet::contains(const Matrix& m) const {
  if (m.dim() != dim_) throw std::invalid_argument("BasisSet::contains: dimension mismatch");
  const double rnorm = norm2(project_out(real_vectorize(m)));
  if (exact_) {
    if (auto image = detail::integer_image(m)) {
      if (auto reduced = echelon_.reduce(std::move(*image))) {
        if (is_zero_vector(*reduced)) return {true, 0.0};
        return {false, rnorm};
      }
    }
  }
  const double threshold = tol_ * std::max(m.frobenius_norm(), scale_);
  return {rnorm <= threshold, rnorm};
}

std::vector<Matrix> BasisSet::independent_members() const {
  std::vector<Matrix> out;
  out.reserve(independent_.size());
  for (std::size_t i : independent_) out.push_back(members_[i]);
  return out;
}

BasisSet span_rank(std::span<const Matrix> mats, double tol) {
  if (mats.empty()) throw std::invalid_argument("span_rank: empty input");
  const int n = mats.front().dim();
  double scale = 0.0;
  for (const Matrix& m : mats) {
    if (m.dim() != n) throw std::invalid_argument("span_rank: mixed dimensions");
    scale = std::max(scale, m.frobenius_norm());
  }
  BasisSet basis(n, tol, scale);
  for (const Matrix& m : mats) basis.add(m);
  return basis;
}

}  // namespace symctl
