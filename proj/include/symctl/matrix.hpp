#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace symctl {

using Complex = std::complex<double>;

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 16;

/// Dense square complex matrix, row-major. Entries are always finite.
///
/// Real matrices are the zero-imaginary special case. A matrix whose entries
/// all have integer real and imaginary parts is "exact": sums, differences
/// and products of exact matrices are computed without rounding as long as
/// the magnitudes stay below 2^53, which is far beyond anything the catalog
/// produces.
class Matrix {
 public:
  explicit Matrix(int n);
  Matrix(int n, std::vector<Complex> entries);

  /// Real matrix from nested rows; throws if the rows are not square.
  static Matrix real(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(int n);
  static Matrix zero(int n) { return Matrix(n); }
  /// Matrix unit E_{row,col}, zero-based.
  static Matrix unit(int n, int row, int col);

  int dim() const { return n_; }
  std::size_t size() const { return entries_.size(); }

  Complex operator()(int row, int col) const { return entries_[index(row, col)]; }
  Complex& operator()(int row, int col) { return entries_[index(row, col)]; }

  std::span<const Complex> entries() const { return entries_; }

  bool is_exact() const;
  bool is_real() const;
  bool is_zero() const;
  double frobenius_norm() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex scalar);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(col);
  }

  int n_;
  std::vector<Complex> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Complex scalar, Matrix a);
Matrix operator*(double scalar, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Frobenius norm of a - b.
double distance(const Matrix& a, const Matrix& b);

/// AB - BA. Throws std::invalid_argument on dimension mismatch.
Matrix commutator(const Matrix& a, const Matrix& b);

/// [[A,B],C], the ternary product of a matrix Lie triple system.
Matrix double_bracket(const Matrix& a, const Matrix& b, const Matrix& c);

/// Real parts row-major, then imaginary parts row-major (length 2n^2).
std::vector<double> real_vectorize(const Matrix& m);

/// Inverse of real_vectorize; the vector length must be 2n^2.
Matrix from_real_vector(int n, std::span<const double> v);

/// Largest ||tA||_F accepted by expm; beyond this e^{tA} can overflow.
inline constexpr double kExpmMaxNorm = 700.0;

/// e^{tA} by scaling and squaring with a degree-13 Taylor polynomial.
///
/// The scaling exponent is chosen so that ||tA/2^s||_F <= 1/2, which keeps
/// the truncation remainder below 1e-15 before squaring. Throws
/// std::overflow_error if ||tA||_F exceeds kExpmMaxNorm or t is not finite.
Matrix expm(const Matrix& a, double t);

/// Gauss-Jordan inverse with partial pivoting. Throws std::domain_error for a
/// numerically singular matrix.
Matrix inverse(const Matrix& m);

}  // namespace symctl
