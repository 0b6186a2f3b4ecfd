#pragma once

// Certificate-emitting decomposition strategies. Each one appends claims to a
// CertificateBuilder whose ledger state it assumes on entry.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "projsum/certificate.hpp"
#include "projsum/element_spec.hpp"

namespace projsum {

struct StrategyOptions {
  std::size_t dimension_cap = kDefaultDimensionCap;
  double matrix_tol = kDefaultMatrixTol;
  double coeff_tol = kDefaultCoeffTol;
};

class OutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NegativeCoefficient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotDecomposable : public std::runtime_error {
 public:
  explicit NotDecomposable(std::string reason)
      : std::runtime_error("element is not a finite sum of projections: " + reason), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

enum class Decomposability { Decomposable, AlreadyProjection, NotDecomposable };
const char* to_string(Decomposability d);

/// Throws NegativeCoefficient.
Decomposability check_decomposable(const SpectralElement& a);

/// Parameter sets behind each construction, exposed so callers can check the identities.
struct RationalParams {
  BigRational alpha, beta;
  long k = 0, h = 0, m = 0, r = 0;
  std::size_t dimension = 0;  ///< r m + m, or m when beta is 0
  std::size_t count = 0;      ///< r k + h
};
/// Requires alpha > 1, beta >= 0.
RationalParams rational_params(const BigRational& alpha, const BigRational& beta);

struct AlphaPParams {
  long n = 0, m = 0;
  Coefficient delta;
  Coefficient b_trace;   ///< (mn+1) alpha + n (alpha-1) delta
  Coefficient c;         ///< alpha - (alpha-1) delta, left for the theta part
};
/// alpha in (1, 2), n >= 2 the order of the class.
AlphaPParams alpha_p_params(const Coefficient& alpha, long n);

struct ExtensionParams {
  long n = 0;
  Coefficient delta;
  Coefficient epsilon;
  Coefficient b_trace;  ///< n alpha + beta + epsilon
};
/// alpha > 1, beta in [0, 1).
ExtensionParams extension_params(const Coefficient& alpha, const Coefficient& beta);

struct RhoChoice {
  BigRational rho1, rho2, rho3;
  std::size_t dim2 = 0, dim3 = 0;  ///< pair dimensions (rho1, rho2) and (rho1, rho3)
};
/// rho1 in (1, alpha), rho2 in ((alpha-rho1)/3, 2(alpha-rho1)/3), rho3 in (beta/3, 2beta/3),
/// picked to keep the pair dimensions small. Throws DimensionCapExceeded.
RhoChoice choose_rhos(const Coefficient& alpha, const Coefficient& beta, std::size_t cap);

/// Single-owner accumulator for claims; tracks node classes and projection count.
class CertificateBuilder {
 public:
  CertificateBuilder(KGroup group, StrategyOptions opts = {});

  const StrategyOptions& options() const { return opts_; }
  const KGroup& group() const { return group_; }
  const KClass& class_of(NodeId id) const { return classes_.at(id); }
  KClass theta() const { return group_.zero(); }

  NodeId add_root(const Coefficient& coeff, const KClass& kclass);
  std::vector<NodeId> split(NodeId parent, const std::vector<KClass>& classes);
  std::vector<NodeId> split_theta(NodeId parent, std::size_t count);
  void coeff_split(NodeId node, const Coefficient& from, std::vector<Coefficient> into);
  void discharge(NodeId node);
  void terminal_claim(std::vector<NodeId> slots, std::vector<Coefficient> alphas, const RankOneSet& vectors,
                      const std::string& strategy);
  /// Outputs each hold `scale`, class of the slots.
  std::vector<NodeId> registered_claim(std::vector<NodeId> slots, std::vector<Coefficient> alphas,
                                       const Coefficient& scale, const RankOneSet& vectors,
                                       const std::string& strategy);
  /// Sum of equal-class slots, each holding `scale`, as one node holding `scale`.
  NodeId regroup(const std::vector<NodeId>& slots, const Coefficient& scale);

  std::size_t projections() const { return projections_; }
  std::size_t claims() const { return cert_.claims.size(); }
  void check_dimension(std::size_t dim) const;

  Certificate finish() &&;

 private:
  NodeId fresh(const KClass& kclass);

  KGroup group_;
  StrategyOptions opts_;
  Certificate cert_;
  std::vector<KClass> classes_;
  std::uint32_t next_claim_ = 0;
  std::size_t projections_ = 0;
};

/// Unit vectors with sum v v^T = diag(d); sum(d) must be an integer.
RankOneSet diagonal_vectors(const std::vector<Coefficient>& d, const StrategyOptions& opts);

/// Ledger holds scale*gamma at the theta node p. Six projections; returns the
/// six output nodes when scale != 1, otherwise nothing (all terminal).
std::vector<NodeId> strat_big(CertificateBuilder& b, const Coefficient& gamma, NodeId p, const Coefficient& scale);

/// Ledger holds alpha at p and beta at q (both theta). q may be absent when beta is 0.
void strat_rational(CertificateBuilder& b, const BigRational& alpha, const BigRational& beta, NodeId p,
                    std::optional<NodeId> q);

/// Ledger holds alpha > 1 at p and beta >= 0 at q (both theta).
void strat_real(CertificateBuilder& b, const Coefficient& alpha, const Coefficient& beta, NodeId p,
                std::optional<NodeId> q);

/// Ledger holds alpha > 1 at p, any class.
void strat_alpha_p(CertificateBuilder& b, const Coefficient& alpha, NodeId p);

/// Ledger holds alpha > 1 at p and beta in [0, 1) at q; p, q orthogonal, any classes.
void strat_extension(CertificateBuilder& b, const Coefficient& alpha, const Coefficient& beta, NodeId p, NodeId q);

/// Full pipeline. Throws NotDecomposable, NegativeCoefficient, DimensionCapExceeded.
Certificate strat_spectral(const SpectralElement& a, const StrategyOptions& opts = {});

}  // namespace projsum
