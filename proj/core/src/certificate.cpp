#include "projsum/certificate.hpp"

#include <algorithm>
#include <stdexcept>

namespace projsum {

namespace {

void normalize(LabelSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

struct Item {
  const LabelAtom* atom;
  std::size_t set;
};

// First two distinct set indices seen.
struct TwoSets {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t a = kNone, b = kNone;
  void add(std::size_t s) {
    if (a == kNone) a = s;
    else if (s != a && b == kNone) b = s;
  }
  bool empty() const { return a == kNone; }
  bool multi() const { return b != kNone; }
  std::size_t other_than(std::size_t s) const { return a == s ? b : a; }
};

using Conflict = std::optional<std::pair<std::size_t, std::size_t>>;

Conflict ordered(std::size_t x, std::size_t y) { return std::make_pair(std::min(x, y), std::max(x, y)); }

// items[lo, hi) share their first d entries, d odd (a node path).
Conflict scan(const std::vector<Item>& items, std::size_t lo, std::size_t hi, std::size_t d) {
  TwoSets all, ends, cont;
  std::size_t i = lo;
  for (; i < hi && items[i].atom->size() == d; ++i) {
    ends.add(items[i].set);
    all.add(items[i].set);
  }
  std::size_t groups = 0;
  for (std::size_t j = i; j < hi; ++j) {
    all.add(items[j].set);
    cont.add(items[j].set);
    if (j == i || (*items[j].atom)[d] != (*items[j - 1].atom)[d]) ++groups;
  }
  if (!ends.empty() && all.multi()) {
    if (ends.multi()) return ordered(ends.a, ends.b);
    return ordered(ends.a, all.other_than(ends.a));
  }
  if (groups >= 2 && cont.multi()) {
    // Two different splits of the same node: any cross pair of distinct sets conflicts.
    const std::uint32_t first_split = (*items[i].atom)[d];
    const std::size_t a = items[i].set;
    for (std::size_t j = i; j < hi; ++j)
      if ((*items[j].atom)[d] != first_split && items[j].set != a) return ordered(a, items[j].set);
    for (std::size_t j = i; j < hi && (*items[j].atom)[d] == first_split; ++j)
      if (items[j].set != a) return ordered(a, items[j].set);
  }
  for (std::size_t j = i; j < hi;) {
    std::size_t k = j + 1;
    while (k < hi && (*items[k].atom)[d] == (*items[j].atom)[d] && (*items[k].atom)[d + 1] == (*items[j].atom)[d + 1])
      ++k;
    if (auto c = scan(items, j, k, d + 2)) return c;
    j = k;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> first_non_orthogonal(const std::vector<const LabelSet*>& sets) {
  std::vector<Item> items;
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (const auto& a : *sets[s]) items.push_back({&a, s});
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (*x.atom != *y.atom) return *x.atom < *y.atom;
    return x.set < y.set;
  });
  for (std::size_t j = 0; j < items.size();) {
    std::size_t k = j + 1;
    while (k < items.size() && (*items[k].atom)[0] == (*items[j].atom)[0]) ++k;
    if (auto c = scan(items, j, k, 1)) return c;
    j = k;
  }
  return std::nullopt;
}

bool orth(const LabelSet& x, const LabelSet& y) { return !first_non_orthogonal({&x, &y}).has_value(); }

bool orth(const ProjNode& x, const ProjNode& y) { return orth(x.labels, y.labels); }

FactoredProjection FactoredProjection::rank_one(std::size_t dim, const SparseVector& v) {
  FactoredProjection f;
  f.dim = dim;
  f.rank = 1;
  f.entries.reserve(v.entries.size());
  for (auto [row, value] : v.entries) f.entries.push_back({row, 0, value});
  return f;
}

FactoredProjection FactoredProjection::identity(std::size_t dim) {
  FactoredProjection f;
  f.dim = dim;
  f.rank = dim;
  for (std::uint32_t i = 0; i < dim; ++i) f.entries.push_back({i, i, 1.0});
  return f;
}

std::vector<SparseVector> FactoredProjection::columns() const {
  std::vector<SparseVector> cols(rank);
  for (const auto& e : entries) cols.at(e.col).entries.emplace_back(e.row, e.value);
  for (auto& c : cols) std::sort(c.entries.begin(), c.entries.end());
  return cols;
}

SymMatrix FactoredProjection::to_dense() const {
  SymMatrix m(dim);
  for (const auto& c : columns())
    for (std::size_t a = 0; a < c.entries.size(); ++a)
      for (std::size_t b = a; b < c.entries.size(); ++b)
        m.add(c.entries[a].first, c.entries[b].first, c.entries[a].second * c.entries[b].second);
  return m;
}

std::size_t count_projections(const Certificate& cert) {
  std::size_t n = 0;
  for (const auto& claim : cert.claims) {
    if (std::holds_alternative<Discharge>(claim)) {
      ++n;
    } else if (const auto* m = std::get_if<MatrixClaim>(&claim); m && m->terminal) {
      n += m->matrices.size();
    }
  }
  return n;
}

const ProjNode& Forest::add_root(NodeId id, std::uint32_t index, KClass kclass) {
  ProjNode node{id, std::move(kclass), RootOrigin{index}, {LabelAtom{index}}, false};
  auto [it, inserted] = nodes_.emplace(id, std::move(node));
  if (!inserted) throw std::invalid_argument("duplicate node id " + std::to_string(id));
  return it->second;
}

const ProjNode& Forest::add_child(NodeId id, NodeId parent, std::uint32_t branch, KClass kclass) {
  if (nodes_.count(id)) throw std::invalid_argument("duplicate node id " + std::to_string(id));
  LabelSet labels = at(parent).labels;
  for (auto& atom : labels) {
    atom.push_back(parent);
    atom.push_back(branch);
  }
  ProjNode node{id, std::move(kclass), SplitOrigin{parent, branch}, std::move(labels), false};
  return nodes_.emplace(id, std::move(node)).first->second;
}

const ProjNode& Forest::add_output(NodeId id, std::uint32_t claim, std::uint32_t output, KClass kclass,
                                   const std::vector<NodeId>& slots) {
  if (nodes_.count(id)) throw std::invalid_argument("duplicate node id " + std::to_string(id));
  LabelSet labels;
  for (NodeId s : slots) {
    const auto& l = at(s).labels;
    labels.insert(labels.end(), l.begin(), l.end());
  }
  normalize(labels);
  ProjNode node{id, std::move(kclass), OutputOrigin{claim, output}, std::move(labels), false};
  return nodes_.emplace(id, std::move(node)).first->second;
}

}  // namespace projsum
