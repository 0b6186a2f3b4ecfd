#pragma once

// Factorisation of a PSD matrix with integer trace m >= rank into m rank-one
// projections, via a constructive unit-diagonal Schur-Horn step.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "projsum/rational.hpp"
#include "projsum/sym_matrix.hpp"

namespace projsum {

struct FillmoreOptions {
  double matrix_tol = kDefaultMatrixTol;
  double coeff_tol = kDefaultCoeffTol;
  std::size_t dimension_cap = kDefaultDimensionCap;
};

enum class InfeasibleReason { NonIntegerTrace, RankExceedsTrace };
const char* to_string(InfeasibleReason r);

struct Infeasible {
  InfeasibleReason reason;
  std::string detail;
};

class FillmoreError : public std::runtime_error {
 public:
  enum class Kind { NotPSD, NonIntegerTrace, RankExceedsTrace, MajorizationFailure };
  FillmoreError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Sparse real vector: (coordinate, value) pairs with increasing coordinates.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  double norm() const;
};

struct RankOneSet {
  std::size_t dim = 0;
  std::vector<SparseVector> vectors;

  /// Sum of v v^T over all vectors.
  SymMatrix reconstruct() const;
  /// max_i | ||v_i|| - 1 |.
  double max_norm_defect() const;
};

struct FillmoreInput {
  SymMatrix a;
  std::size_t m;
};

/// m = round(tr A) when the trace is integral (within coeff_tol * max(1, tr A)) and rank A <= m.
/// Throws FillmoreError(NotPSD) if A is not PSD at matrix_tol.
std::variant<std::size_t, Infeasible> feasibility(const SymMatrix& a, const FillmoreOptions& opts = {});

/// Orthogonal V with V diag(lambda) V^T having unit diagonal. lambda must sum to its
/// length and majorize the all-ones vector; otherwise throws MajorizationFailure.
DenseMatrix schur_horn_unit_diag(std::span<const double> lambda, const FillmoreOptions& opts = {});

/// m unit vectors with sum v v^T = A.
RankOneSet fillmore_decompose(const FillmoreInput& input, const FillmoreOptions& opts = {});

/// Diagonal target fast path: greedy blocks of integer mass, each solved by the
/// Schur-Horn step. Falls back to fillmore_decompose when the greedy pass fails.
RankOneSet fillmore_diagonal_fast(std::span<const double> diagonal, std::size_t m,
                                  const FillmoreOptions& opts = {});
/// Exact-input overload; requires sum(alpha) == m exactly.
RankOneSet fillmore_diagonal_fast(std::span<const BigRational> diagonal, std::size_t m,
                                  const FillmoreOptions& opts = {});

}  // namespace projsum
