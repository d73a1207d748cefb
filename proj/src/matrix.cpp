#include "symctl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace symctl {

namespace {

void check_dim(int n) {
  if (n < kMinDim || n > kMaxDim) {
    throw std::invalid_argument("matrix dimension " + std::to_string(n) +
                                " outside supported range [2, 16]");
  }
}

void check_same_dim(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
}

bool is_integer(double x) { return std::isfinite(x) && std::trunc(x) == x; }

}  // namespace

Matrix::Matrix(int n) : n_(n) {
  check_dim(n);
  entries_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Complex{});
}

Matrix::Matrix(int n, std::vector<Complex> entries) : n_(n), entries_(std::move(entries)) {
  check_dim(n);
  if (entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("matrix entry count does not match n*n");
  }
  if (!all_finite()) {
    throw std::invalid_argument("matrix entries must be finite");
  }
}

Matrix Matrix::real(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Complex> entries;
  entries.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw std::invalid_argument("matrix rows must form a square");
    }
    for (double x : row) entries.emplace_back(x, 0.0);
  }
  return Matrix(n, std::move(entries));
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::unit(int n, int row, int col) {
  Matrix m(n);
  m(row, col) = 1.0;
  return m;
}

bool Matrix::is_exact() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Complex z) {
    return is_integer(z.real()) && is_integer(z.imag());
  });
}

bool Matrix::is_real() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Complex z) { return z.imag() == 0.0; });
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Complex z) { return z == Complex{}; });
}

double Matrix::frobenius_norm() const {
  double sum = 0.0;
  for (Complex z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

bool Matrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  check_same_dim(*this, other, "add");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  check_same_dim(*this, other, "subtract");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
  for (Complex& z : entries_) z *= scalar;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= Complex(-1.0); }
Matrix operator*(Complex scalar, Matrix a) { return a *= scalar; }
Matrix operator*(double scalar, Matrix a) { return a *= Complex(scalar); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_dim(a, b, "multiply");
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

Matrix commutator(const Matrix& a, const Matrix& b) {
  check_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix double_bracket(const Matrix& a, const Matrix& b, const Matrix& c) {
  check_same_dim(a, b, "double_bracket");
  check_same_dim(a, c, "double_bracket");
  return commutator(commutator(a, b), c);
}

std::vector<double> real_vectorize(const Matrix& m) {
  const auto entries = m.entries();
  std::vector<double> v(2 * entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    v[i] = entries[i].real();
    v[entries.size() + i] = entries[i].imag();
  }
  return v;
}

Matrix from_real_vector(int n, std::span<const double> v) {
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (v.size() != 2 * count) {
    throw std::invalid_argument("real vector length must be 2n^2");
  }
  std::vector<Complex> entries(count);
  for (std::size_t i = 0; i < count; ++i) entries[i] = Complex(v[i], v[count + i]);
  return Matrix(n, std::move(entries));
}

Matrix expm(const Matrix& a, double t) {
  if (!std::isfinite(t)) throw std::overflow_error("expm: non-finite time");
  Matrix scaled = t * a;
  const double norm = scaled.frobenius_norm();
  if (!std::isfinite(norm) || norm > kExpmMaxNorm) {
    throw std::overflow_error("expm: ||tA|| = " + std::to_string(norm) +
                              " exceeds supported range " + std::to_string(kExpmMaxNorm));
  }
  const int n = a.dim();
  if (norm == 0.0) return Matrix::identity(n);

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm))) + 1);
  scaled *= Complex(std::ldexp(1.0, -squarings));

  // Horner form of sum_{k<=13} B^k / k!.
  constexpr int kDegree = 13;
  const Matrix id = Matrix::identity(n);
  Matrix result = id;
  for (int k = kDegree; k >= 1; --k) {
    result = scaled * result;
    result *= Complex(1.0 / k);
    result += id;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  if (!result.all_finite()) throw std::overflow_error("expm: result overflowed");
  return result;
}

Matrix inverse(const Matrix& m) {
  const int n = m.dim();
  Matrix work = m;
  Matrix inv = Matrix::identity(n);
  const double scale = std::max(m.frobenius_norm(), 1.0);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    }
    if (std::abs(work(pivot, col)) <= 1e-14 * scale) {
      throw std::domain_error("inverse: matrix is numerically singular");
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Complex p = work(col, col);
    for (int j = 0; j < n; ++j) {
      work(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = work(r, col);
      if (f == Complex{}) continue;
      for (int j = 0; j < n; ++j) {
        work(r, j) -= f * work(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace symctl
