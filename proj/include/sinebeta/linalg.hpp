#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sinebeta {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix out(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (xik == T(0)) continue;
        for (int j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Indices below are 0-based; entry k of a vector corresponds to k+1 in the
// usual 1-based numbering.
struct SystemMatrices {
  int n = 0;
  Matrix<double> A;
  std::vector<double> A_sub;    // A[k][k-1], k = 1..n-1
  std::vector<double> A_diag;
  std::vector<double> A_super;  // A[k][k+1], k = 0..n-2
  std::vector<double> B;        // diagonal of B
  std::vector<double> e;
  std::vector<double> v;
  std::vector<double> f;
};

SystemMatrices build_system(int n);

std::vector<double> eigenvalues_A(int n);

Matrix<double> involution_T(int n);

struct IdentityCheck {
  std::string name;
  int index = 0;
  bool passed = false;
  std::string detail;
};

struct IdentityReport {
  int n = 0;
  std::vector<IdentityCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// exact rational checks plus a redundant floating point pass at 1e-12
IdentityReport identity_report(int n);

}  // namespace sinebeta
