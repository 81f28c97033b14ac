#include "flagsos/ratmatrix.hpp"

#include <stdexcept>

namespace flagsos {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  RatMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Eigen::MatrixXd RatMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

std::vector<std::vector<Rational>> RatMatrix::to_rows() const {
  std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  RatMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + Rational(-1) * b; }

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

namespace {

// Row-reduces a copy of m (optionally augmented) and returns the rank.
int eliminate(RatMatrix& m, RatMatrix* aug, Rational* det) {
  const int rows = m.rows(), cols = m.cols();
  int r = 0;
  if (det) *det = 1;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      if (det) *det = 0;
      continue;
    }
    if (piv != r) {
      for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
      if (aug)
        for (int j = 0; j < aug->cols(); ++j) std::swap((*aug)(piv, j), (*aug)(r, j));
      if (det) *det = -*det;
    }
    const Rational p = m(r, c);
    if (det) *det *= p;
    for (int j = 0; j < cols; ++j) m(r, j) /= p;
    if (aug)
      for (int j = 0; j < aug->cols(); ++j) (*aug)(r, j) /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (int j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
      if (aug)
        for (int j = 0; j < aug->cols(); ++j) (*aug)(i, j) -= f * (*aug)(r, j);
    }
    ++r;
  }
  if (det && r < rows) *det = 0;
  return r;
}

}  // namespace

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  RatMatrix m = a, inv = RatMatrix::identity(a.rows());
  if (eliminate(m, &inv, nullptr) < a.rows()) throw std::domain_error("matrix is singular");
  return inv;
}

int rank(const RatMatrix& a) {
  RatMatrix m = a;
  return eliminate(m, nullptr, nullptr);
}

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  RatMatrix m = a;
  Rational det;
  eliminate(m, nullptr, &det);
  return det;
}

PsdCheck check_psd_rational(const RatMatrix& input) {
  if (!input.is_symmetric()) throw std::invalid_argument("check_psd_rational: matrix is not symmetric");
  RatMatrix a = input;
  const int n = a.rows();
  std::vector<char> done(n, 0);
  PsdCheck out;
  for (int step = 0; step < n; ++step) {
    // Largest remaining diagonal entry as pivot.
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && (piv < 0 || a(i, i) > a(piv, piv))) piv = i;
    const Rational p = a(piv, piv);
    if (p < 0) {
      out.witness = piv;
      return out;
    }
    if (p == 0) {
      // Every remaining diagonal entry is <= 0; PSD forces the rest to vanish.
      for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (int j = 0; j < n; ++j)
          if (!done[j] && a(i, j) != 0) {
            out.witness = i;
            return out;
          }
      }
      out.psd = true;
      return out;
    }
    done[piv] = 1;
    ++out.rank;
    for (int i = 0; i < n; ++i) {
      if (done[i] || a(i, piv) == 0) continue;
      const Rational f = a(i, piv) / p;
      for (int j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= f * a(piv, j);
    }
  }
  out.psd = true;
  return out;
}

}  // namespace flagsos
