#include "projsum/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace projsum {

const char* to_string(VerifyErrorKind k) {
  switch (k) {
    case VerifyErrorKind::LedgerMismatch: return "LedgerMismatch";
    case VerifyErrorKind::IllegalSplit: return "IllegalSplit";
    case VerifyErrorKind::NotOrthogonal: return "NotOrthogonal";
    case VerifyErrorKind::SlotClassMismatch: return "SlotClassMismatch";
    case VerifyErrorKind::NotAProjection: return "NotAProjection";
    case VerifyErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case VerifyErrorKind::TraceNotConserved: return "TraceNotConserved";
    case VerifyErrorKind::LedgerNotEmpty: return "LedgerNotEmpty";
    case VerifyErrorKind::CountMismatch: return "CountMismatch";
    case VerifyErrorKind::Structural: return "Structural";
  }
  return "?";
}

bool Report::has(VerifyErrorKind k) const {
  return std::any_of(errors.begin(), errors.end(), [k](const VerifyError& e) { return e.kind == k; });
}

namespace {

struct StructuralError {
  std::string message;
};

double sparse_dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first) {
      ++i;
    } else if (a.entries[i].first > b.entries[j].first) {
      ++j;
    } else {
      s += a.entries[i].second * b.entries[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

struct ProjectionCheck {
  double defect;  ///< ||M^2 - M||_F
  std::size_t rank;
};

// For M = F F^T, M^2 - M and G^2 - G (G = F^T F) share their nonzero spectrum,
// so the Frobenius defect can be read off the small Gram matrix.
ProjectionCheck check_projection(const std::vector<SparseVector>& cols) {
  const std::size_t r = cols.size();
  if (r == 0) return {0.0, 0};
  SymMatrix g(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) g.set(a, b, sparse_dot(cols[a], cols[b]));
  double defect2 = 0.0;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      double sq = 0.0;
      for (std::size_t k = 0; k < r; ++k) sq += g(a, k) * g(k, b);
      const double d = sq - g(a, b);
      defect2 += (a == b ? 1.0 : 2.0) * d * d;
    }
  std::size_t rank = 0;
  if (r == 1) {
    rank = g(0, 0) > 0.5 ? 1 : 0;
  } else {
    for (double l : sym_eigen(g, r).values)
      if (l > 0.5) ++rank;
  }
  return {std::sqrt(defect2), rank};
}

class Replay {
 public:
  explicit Replay(const Certificate& cert) : cert_(cert), forest_(cert.group) {}

  Report run() {
    try {
      for (std::size_t i = 0; i < cert_.input.size(); ++i) {
        const auto& block = cert_.input[i];
        if (block.kclass.moduli() != cert_.group.moduli())
          throw StructuralError{"root " + std::to_string(i) + " class does not belong to the group"};
        forest_.add_root(static_cast<NodeId>(i), static_cast<std::uint32_t>(i), block.kclass);
        ledger_[static_cast<NodeId>(i)].push_back(block.coeff);
      }
      for (std::size_t i = 0; i < cert_.claims.size(); ++i) {
        claim_ = i;
        std::visit([this](const auto& c) { apply(c); }, cert_.claims[i]);
      }
      claim_.reset();
      finish();
    } catch (const StructuralError& e) {
      error(VerifyErrorKind::Structural, e.message);
    } catch (const std::exception& e) {
      error(VerifyErrorKind::Structural, e.what());
    }
    report_.valid = report_.errors.empty();
    return report_;
  }

 private:
  void error(VerifyErrorKind kind, std::string message) {
    report_.errors.push_back({kind, claim_, std::move(message)});
  }

  const ProjNode& node(NodeId id) {
    if (!forest_.contains(id)) throw StructuralError{"unknown node id " + std::to_string(id)};
    return forest_.at(id);
  }

  void new_id(NodeId id) {
    if (forest_.contains(id)) throw StructuralError{"duplicate node id " + std::to_string(id)};
  }

  // Removes one ledger entry at `id` matching `target`; false if none does.
  bool consume(NodeId id, const Coefficient& target) {
    auto it = ledger_.find(id);
    if (it == ledger_.end()) return false;
    auto& entries = it->second;
    auto hit = std::find_if(entries.begin(), entries.end(), [&](const Coefficient& c) {
      return coefficients_match(c, target, cert_.coeff_tolerance);
    });
    if (hit == entries.end()) return false;
    entries.erase(hit);
    if (entries.empty()) ledger_.erase(it);
    return true;
  }

  std::string ledger_text(NodeId id) const {
    std::string s = "{";
    if (auto it = ledger_.find(id); it != ledger_.end())
      for (std::size_t i = 0; i < it->second.size(); ++i) s += (i ? ", " : "") + it->second[i].to_string();
    return s + "}";
  }

  void apply(const CoeffSplit& c) {
    node(c.node);
    Coefficient sum(0);
    bool negative = false;
    for (const auto& part : c.into) {
      sum = sum + part;
      if (part.sign() < 0 && !coefficients_match(part, Coefficient(0), cert_.coeff_tolerance)) negative = true;
    }
    if (negative) {
      error(VerifyErrorKind::LedgerMismatch, "coefficient split has a negative part");
      return;
    }
    if (!coefficients_match(sum, c.from, cert_.coeff_tolerance)) {
      error(VerifyErrorKind::LedgerMismatch,
            "parts sum to " + sum.to_string() + ", not " + c.from.to_string());
      return;
    }
    if (!consume(c.node, c.from)) {
      error(VerifyErrorKind::LedgerMismatch, "node " + std::to_string(c.node) + " holds " + ledger_text(c.node) +
                                                 ", no entry " + c.from.to_string());
      return;
    }
    auto& entries = ledger_[c.node];
    entries.insert(entries.end(), c.into.begin(), c.into.end());
    if (entries.empty()) ledger_.erase(c.node);
  }

  void apply(const NodeSplit& s) {
    const ProjNode& parent = node(s.parent);
    if (parent.split) throw StructuralError{"node " + std::to_string(s.parent) + " split twice"};
    if (s.children.empty()) throw StructuralError{"node split with no children"};
    std::vector<KClass> classes;
    for (const auto& ch : s.children) {
      new_id(ch.id);
      if (ch.kclass.moduli() != cert_.group.moduli())
        throw StructuralError{"child class does not belong to the group"};
      classes.push_back(ch.kclass);
    }
    if (!split_legal(parent.kclass, classes)) {
      KClass sum = classes.front();
      for (std::size_t i = 1; i < classes.size(); ++i) sum = sum + classes[i];
      error(VerifyErrorKind::IllegalSplit, "children of node " + std::to_string(s.parent) + " sum to " +
                                               sum.to_string() + ", parent class " + parent.kclass.to_string());
    }
    forest_.at(s.parent).split = true;
    std::vector<Coefficient> moved;
    if (auto it = ledger_.find(s.parent); it != ledger_.end()) {
      moved = std::move(it->second);
      ledger_.erase(it);
    }
    for (std::uint32_t b = 0; b < s.children.size(); ++b) {
      forest_.add_child(s.children[b].id, s.parent, b, s.children[b].kclass);
      if (!moved.empty()) ledger_[s.children[b].id] = moved;
    }
  }

  void apply(const MatrixClaim& m) {
    const std::size_t n = m.slots.size();
    if (n == 0) throw StructuralError{"matrix claim with no slots"};
    if (m.alphas.size() != n) throw StructuralError{"matrix claim alphas do not match slots"};
    if (!m.terminal && m.outputs.size() != m.matrices.size())
      throw StructuralError{"registered matrix claim needs one output id per matrix"};
    std::vector<const LabelSet*> labels;
    for (NodeId s : m.slots) labels.push_back(&node(s).labels);
    for (const auto& f : m.matrices) {
      if (f.dim != n) throw StructuralError{"matrix dimension does not match slot count"};
      for (const auto& e : f.entries)
        if (e.row >= f.dim || e.col >= f.rank) throw StructuralError{"factor entry out of range"};
    }

    if (auto bad = first_non_orthogonal(labels)) {
      error(VerifyErrorKind::NotOrthogonal, "slots " + std::to_string(m.slots[bad->first]) + " and " +
                                                std::to_string(m.slots[bad->second]) + " are not orthogonal");
    }
    const KClass slot_class = node(m.slots.front()).kclass;
    for (NodeId s : m.slots)
      if (!(node(s).kclass == slot_class)) {
        error(VerifyErrorKind::SlotClassMismatch, "slot " + std::to_string(s) + " has class " +
                                                      node(s).kclass.to_string() + ", expected " +
                                                      slot_class.to_string());
        break;
      }

    for (std::size_t i = 0; i < n; ++i) {
      const Coefficient want = m.scale * m.alphas[i];
      if (!consume(m.slots[i], want))
        error(VerifyErrorKind::LedgerMismatch, "slot " + std::to_string(m.slots[i]) + " holds " +
                                                   ledger_text(m.slots[i]) + ", no entry " + want.to_string());
    }

    SymMatrix sum(n);
    double trace = 0.0;
    std::vector<std::size_t> ranks;
    for (std::size_t j = 0; j < m.matrices.size(); ++j) {
      const auto cols = m.matrices[j].columns();
      const ProjectionCheck pc = check_projection(cols);
      if (pc.defect > cert_.tolerance) {
        std::ostringstream os;
        os << "matrix " << j << " has ||M^2 - M||_F = " << pc.defect;
        error(VerifyErrorKind::NotAProjection, os.str());
      }
      ranks.push_back(pc.rank);
      for (const auto& c : cols) {
        for (std::size_t a = 0; a < c.entries.size(); ++a) {
          trace += c.entries[a].second * c.entries[a].second;
          for (std::size_t b = a; b < c.entries.size(); ++b)
            sum.add(c.entries[a].first, c.entries[b].first, c.entries[a].second * c.entries[b].second);
        }
      }
    }
    double alpha_trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = m.alphas[i].to_double();
      sum.add(i, i, -a);
      alpha_trace += a;
    }
    const double residual = sum.frobenius_norm();
    report_.max_residual = std::max(report_.max_residual, residual);
    if (!(residual <= cert_.tolerance)) {
      std::ostringstream os;
      os << "||sum M_j - diag(alpha)||_F = " << residual;
      error(VerifyErrorKind::ResidualTooLarge, os.str());
    }
    if (!(std::fabs(trace - alpha_trace) <= cert_.tolerance * static_cast<double>(n))) {
      std::ostringstream os;
      os << "matrix traces sum to " << trace << ", alphas to " << alpha_trace;
      error(VerifyErrorKind::TraceNotConserved, os.str());
    }

    if (m.terminal) {
      if (!coefficients_match(m.scale, Coefficient(1), cert_.coeff_tolerance))
        error(VerifyErrorKind::LedgerMismatch, "terminal matrix claim with scale " + m.scale.to_string());
      report_.projections += m.matrices.size();
    } else {
      for (std::size_t j = 0; j < m.outputs.size(); ++j) {
        new_id(m.outputs[j]);
        forest_.add_output(m.outputs[j], m.id, static_cast<std::uint32_t>(j),
                           slot_class.times(static_cast<std::int64_t>(ranks[j])), m.slots);
        ledger_[m.outputs[j]].push_back(m.scale);
      }
    }
  }

  void apply(const Discharge& d) {
    node(d.node);
    if (!consume(d.node, Coefficient(1))) {
      error(VerifyErrorKind::LedgerMismatch,
            "node " + std::to_string(d.node) + " holds " + ledger_text(d.node) + ", no unit coefficient");
      return;
    }
    ++report_.projections;
  }

  void finish() {
    if (!ledger_.empty()) {
      std::ostringstream os;
      os << ledger_.size() << " node(s) still hold coefficients:";
      std::size_t shown = 0;
      for (const auto& [id, entries] : ledger_) {
        if (shown++ == 5) {
          os << " ...";
          break;
        }
        os << " " << id << "=" << ledger_text(id);
      }
      error(VerifyErrorKind::LedgerNotEmpty, os.str());
    }
    if (report_.projections != cert_.claimed_count) {
      error(VerifyErrorKind::CountMismatch, "replay emits " + std::to_string(report_.projections) +
                                                " projections, certificate claims " +
                                                std::to_string(cert_.claimed_count));
    }
  }

  const Certificate& cert_;
  Forest forest_;
  std::map<NodeId, std::vector<Coefficient>> ledger_;
  std::optional<std::size_t> claim_;
  Report report_;
};

}  // namespace

Report verify_certificate(const Certificate& cert) { return Replay(cert).run(); }

}  // namespace projsum
