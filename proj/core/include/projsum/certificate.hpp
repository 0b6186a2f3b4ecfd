#pragma once

// Certificate data model: a refinement forest of abstract projection symbols
// and an ordered list of rewrite claims that a verifier replays.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "projsum/coefficient.hpp"
#include "projsum/fillmore.hpp"
#include "projsum/ktheory.hpp"

namespace projsum {

using NodeId = std::uint32_t;

/// Root index followed by (split node, branch) pairs, flattened.
using LabelAtom = std::vector<std::uint32_t>;
/// Sorted, duplicate-free set of label atoms.
using LabelSet = std::vector<LabelAtom>;

struct RootOrigin {
  std::uint32_t index;
};
struct SplitOrigin {
  NodeId parent;
  std::uint32_t branch;
};
struct OutputOrigin {
  std::uint32_t claim;
  std::uint32_t output;
};
using Origin = std::variant<RootOrigin, SplitOrigin, OutputOrigin>;

struct ProjNode {
  NodeId id = 0;
  KClass kclass;
  Origin origin;
  LabelSet labels;
  bool split = false;  ///< already the parent of a NodeSplit
};

/// Orthogonality: every pair of atoms, one from each node, first differs at a
/// root or at the branch of one shared split.
bool orth(const LabelSet& x, const LabelSet& y);
bool orth(const ProjNode& x, const ProjNode& y);
/// First pair of indices whose label sets are not orthogonal, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_non_orthogonal(const std::vector<const LabelSet*>& sets);

/// Projection M = F F^T given by a sparse factor F (dim x rank).
struct FactoredProjection {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    double value;
  };
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::vector<Entry> entries;

  static FactoredProjection rank_one(std::size_t dim, const SparseVector& v);
  static FactoredProjection identity(std::size_t dim);
  /// Factor columns as sparse vectors.
  std::vector<SparseVector> columns() const;
  SymMatrix to_dense() const;
};

struct CoeffSplit {
  NodeId node;
  Coefficient from;
  std::vector<Coefficient> into;
};

struct NodeSplit {
  struct Child {
    NodeId id;
    KClass kclass;
  };
  NodeId parent;
  std::vector<Child> children;
};

struct MatrixClaim {
  std::uint32_t id = 0;
  std::vector<NodeId> slots;
  std::vector<Coefficient> alphas;
  Coefficient scale{1};
  std::vector<FactoredProjection> matrices;
  bool terminal = true;
  std::vector<NodeId> outputs;  ///< registered output ids, one per matrix
  std::string strategy;         ///< emitting strategy, informational
};

struct Discharge {
  NodeId node;
};

using Claim = std::variant<CoeffSplit, NodeSplit, MatrixClaim, Discharge>;

struct RootBlock {
  Coefficient coeff;
  KClass kclass;
};

struct Certificate {
  KGroup group;
  std::vector<RootBlock> input;
  std::vector<Claim> claims;
  std::size_t claimed_count = 0;
  double tolerance = kDefaultMatrixTol;
  double coeff_tolerance = kDefaultCoeffTol;
};

/// Discharges plus the matrices of every terminal MatrixClaim.
std::size_t count_projections(const Certificate& cert);

/// Forest of projection symbols with derived labels.
class Forest {
 public:
  explicit Forest(KGroup group) : group_(std::move(group)) {}

  const KGroup& group() const { return group_; }
  bool contains(NodeId id) const { return nodes_.count(id) != 0; }
  const ProjNode& at(NodeId id) const { return nodes_.at(id); }
  ProjNode& at(NodeId id) { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  const ProjNode& add_root(NodeId id, std::uint32_t index, KClass kclass);
  const ProjNode& add_child(NodeId id, NodeId parent, std::uint32_t branch, KClass kclass);
  const ProjNode& add_output(NodeId id, std::uint32_t claim, std::uint32_t output, KClass kclass,
                             const std::vector<NodeId>& slots);

  bool orth(NodeId x, NodeId y) const { return projsum::orth(at(x), at(y)); }

 private:
  KGroup group_;
  std::unordered_map<NodeId, ProjNode> nodes_;
};

}  // namespace projsum
