#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sinebeta/errors.hpp"

namespace sinebeta {

// sub has entries (i+1, i), super has (i, i+1); both of length n-1.
template <class T>
bool strictly_diagonally_dominant(const std::vector<T>& sub, const std::vector<T>& diag,
                                  const std::vector<T>& super) {
  using std::abs;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    T off = T(0);
    if (i > 0) off += abs(sub[i - 1]);
    if (i + 1 < n) off += abs(super[i]);
    if (!(abs(diag[i]) > off)) return false;
  }
  return true;
}

// Thomas elimination, no pivoting
template <class T>
std::vector<T> solve_thomas(const std::vector<T>& sub, std::vector<T> diag,
                            const std::vector<T>& super, std::vector<T> b) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == T(0)) throw SingularSolveError("zero pivot in tridiagonal elimination");
    const T m = sub[i - 1] / diag[i - 1];
    diag[i] -= m * super[i - 1];
    b[i] -= m * b[i - 1];
  }
  if (diag[n - 1] == T(0)) throw SingularSolveError("zero pivot in tridiagonal elimination");
  b[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) b[i] = (b[i] - super[i] * b[i + 1]) / diag[i];
  return b;
}

// Gaussian elimination with partial pivoting, same scheme as LAPACK gtsv
template <class T>
std::vector<T> solve_pivoting(std::vector<T> dl, std::vector<T> d, std::vector<T> du,
                              std::vector<T> b) {
  using std::abs;
  const std::size_t n = d.size();
  std::vector<T> du2(n > 2 ? n - 2 : 0, T(0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (abs(d[i]) >= abs(dl[i])) {
      if (d[i] == T(0)) throw SingularSolveError("singular tridiagonal matrix at row " + std::to_string(i));
      const T fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
    } else {
      const T fact = d[i] / dl[i];
      d[i] = dl[i];
      const T tmp = d[i + 1];
      d[i + 1] = du[i] - fact * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = tmp;
      const T bt = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bt - fact * b[i + 1];
    }
  }
  if (d[n - 1] == T(0)) throw SingularSolveError("singular tridiagonal matrix at last row");
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n > 2 ? n - 2 : 0; i-- > 0;)
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  return b;
}

template <class T>
std::vector<T> solve_tridiagonal(const std::vector<T>& sub, const std::vector<T>& diag,
                                 const std::vector<T>& super, const std::vector<T>& b) {
  if (diag.empty()) return {};
  if (strictly_diagonally_dominant(sub, diag, super)) return solve_thomas(sub, diag, super, b);
  return solve_pivoting(sub, diag, super, b);
}

}  // namespace sinebeta
