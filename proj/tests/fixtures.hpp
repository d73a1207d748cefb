#pragma once

// Hand-transcribed bases, kept separate from the catalog so tests can check
// the catalog against them.

#include <cmath>
#include <complex>

#include "symctl/matrix.hpp"

namespace fx {

using symctl::Matrix;

inline Matrix X1() { return Matrix::real({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}); }
inline Matrix X2() { return Matrix::real({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}); }
inline Matrix X3() { return Matrix::real({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}); }

inline Matrix e1() { return Matrix::real({{0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}); }
inline Matrix e2() { return Matrix::real({{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}); }
inline Matrix e3() { return Matrix::real({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}); }
inline Matrix e4() { return Matrix::real({{0, 0, 0, 0}, {0, 0, -1, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}); }
inline Matrix e5() { return Matrix::real({{0, 0, 1, 0}, {0, 0, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}}); }
inline Matrix e6() { return Matrix::real({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}); }

inline Matrix a1() { return Matrix::real({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}); }
inline Matrix a2() { return Matrix::real({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}); }
inline Matrix a3() { return Matrix::real({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}); }
inline Matrix a4() { return Matrix::real({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}); }
inline Matrix a5() { return Matrix::real({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}); }
inline Matrix a6() { return Matrix::real({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}); }

inline Matrix Z1() { return Matrix::real({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}); }
inline Matrix Z3() { return Matrix::real({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}); }
inline Matrix Z4() { return Matrix::real({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}); }
inline Matrix Z6() { return Matrix::real({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}); }
inline Matrix Z8() {
  const double s = 1.0 / std::sqrt(3.0);
  return Matrix::real({{s, 0, 0}, {0, s, 0}, {0, 0, -2 * s}});
}
inline Matrix Z2() {
  Matrix m(3);
  m(0, 1) = std::complex<double>(0, -1);
  m(1, 0) = std::complex<double>(0, 1);
  return m;
}

}  // namespace fx
