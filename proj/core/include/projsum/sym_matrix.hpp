#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace projsum {

/// Default matrix-residual and coefficient tolerances.
inline constexpr double kDefaultMatrixTol = 1e-9;
inline constexpr double kDefaultCoeffTol = 1e-12;
inline constexpr std::size_t kDefaultDimensionCap = 2000;

class DimensionCapExceeded : public std::runtime_error {
 public:
  DimensionCapExceeded(std::size_t dimension, std::size_t cap)
      : std::runtime_error("dimension " + std::to_string(dimension) + " exceeds cap " +
                           std::to_string(cap)),
        dimension_(dimension),
        cap_(cap) {}
  std::size_t dimension() const { return dimension_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t dimension_;
  std::size_t cap_;
};

/// Dense row-major rectangular matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }

  DenseMatrix transpose() const;
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

/// Real symmetric matrix stored as its packed row-major upper triangle.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  /// Symmetric matrix from a square dense one; only the upper triangle is read.
  static SymMatrix from_dense(const DenseMatrix& m);
  /// Rows as nested lists; throws std::invalid_argument unless square and symmetric.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { a_[index(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) { a_[index(i, j)] += v; }

  double trace() const;
  double frobenius_norm() const;
  DenseMatrix to_dense() const;

  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + j;
  }

  std::size_t n_;
  std::vector<double> a_;
};

struct EigenResult {
  std::vector<double> values;  ///< descending
  DenseMatrix vectors;         ///< column i pairs with values[i]
};

/// Cyclic Jacobi eigensolver.
EigenResult sym_eigen(const SymMatrix& a, std::size_t dimension_cap = kDefaultDimensionCap);

struct PsdProfile {
  double trace = 0.0;
  std::size_t rank = 0;
  bool is_psd = false;
};

/// rank counts eigenvalues above tol * max(1, lambda_max); PSD iff
/// lambda_min >= -tol * max(1, |lambda_max|).
PsdProfile psd_profile(const SymMatrix& a, double tol = kDefaultMatrixTol,
                       std::size_t dimension_cap = kDefaultDimensionCap);
PsdProfile psd_profile_from_eigenvalues(std::span<const double> descending, double trace, double tol);

double operator_norm(const SymMatrix& a, std::size_t dimension_cap = kDefaultDimensionCap);

/// ||M^2 - M||_F <= tol.
bool is_projection(const SymMatrix& m, double tol = kDefaultMatrixTol);

}  // namespace projsum
