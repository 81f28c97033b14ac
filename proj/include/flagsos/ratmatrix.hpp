#pragma once

#include <Eigen/Dense>

#include <vector>

#include "flagsos/rational.hpp"

namespace flagsos {

// Small dense matrix over exact rationals (row-major).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  RatMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;
  Eigen::MatrixXd to_double() const;
  std::vector<std::vector<Rational>> to_rows() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& c, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// Exact inverse by Gauss-Jordan; throws std::domain_error when singular.
RatMatrix inverse(const RatMatrix& a);

int rank(const RatMatrix& a);

Rational determinant(const RatMatrix& a);

struct PsdCheck {
  bool psd = false;
  int rank = 0;
  // Index of the first negative pivot (or of a zero pivot with a nonzero
  // remaining row), -1 when PSD.
  int witness = -1;
};

// Exact PSD test by symmetric LDL^T with diagonal pivoting. Throws
// std::invalid_argument when the matrix is not symmetric.
PsdCheck check_psd_rational(const RatMatrix& m);

}  // namespace flagsos
