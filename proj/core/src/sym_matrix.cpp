#include "projsum/sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace projsum {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
  DenseMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in difference");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

SymMatrix::SymMatrix(std::size_t n) : n_(n), a_(n * (n + 1) / 2, 0.0) {
  if (n == 0) throw std::invalid_argument("SymMatrix: dimension must be at least 1");
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

SymMatrix SymMatrix::from_dense(const DenseMatrix& d) {
  if (d.rows() != d.cols()) throw std::invalid_argument("SymMatrix: matrix is not square");
  SymMatrix m(d.rows());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = i; j < d.cols(); ++j) m.set(i, j, d(i, j));
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("SymMatrix: matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (rows[i][j] != rows[j][i]) throw std::invalid_argument("SymMatrix: matrix is not symmetric");
    for (std::size_t j = i; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) {
      double v = (*this)(i, j);
      s += (i == j ? 1.0 : 2.0) * v * v;
    }
  return std::sqrt(s);
}

DenseMatrix SymMatrix::to_dense() const {
  DenseMatrix d(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) d(i, j) = (*this)(i, j);
  return d;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
  SymMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
  SymMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

EigenResult sym_eigen(const SymMatrix& input, std::size_t dimension_cap) {
  const std::size_t n = input.dim();
  if (n > dimension_cap) throw DimensionCapExceeded(n, dimension_cap);

  DenseMatrix a = input.to_dense();
  DenseMatrix v = DenseMatrix::identity(n);

  const double scale = std::max(input.frobenius_norm(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenResult r;
  r.values.resize(n);
  r.vectors = DenseMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    r.values[c] = a(order[c], order[c]);
    for (std::size_t k = 0; k < n; ++k) r.vectors(k, c) = v(k, order[c]);
  }
  return r;
}

PsdProfile psd_profile_from_eigenvalues(std::span<const double> values, double trace, double tol) {
  PsdProfile p;
  p.trace = trace;
  if (values.empty()) {
    p.is_psd = true;
    return p;
  }
  const double top = values.front();
  const double cut = tol * std::max(1.0, top);
  for (double l : values)
    if (l > cut) ++p.rank;
  p.is_psd = values.back() >= -tol * std::max(1.0, std::fabs(top));
  return p;
}

PsdProfile psd_profile(const SymMatrix& a, double tol, std::size_t dimension_cap) {
  EigenResult e = sym_eigen(a, dimension_cap);
  return psd_profile_from_eigenvalues(e.values, a.trace(), tol);
}

double operator_norm(const SymMatrix& a, std::size_t dimension_cap) {
  EigenResult e = sym_eigen(a, dimension_cap);
  return std::max(std::fabs(e.values.front()), std::fabs(e.values.back()));
}

bool is_projection(const SymMatrix& m, double tol) {
  const std::size_t n = m.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < n; ++k) sq += m(i, k) * m(k, j);
      double d = sq - m(i, j);
      s += (i == j ? 1.0 : 2.0) * d * d;
    }
  return std::sqrt(s) <= tol;
}

}  // namespace projsum
