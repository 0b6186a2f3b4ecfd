#include <doctest.h>

#include <bitset>
#include <random>

#include "projsum/certificate.hpp"

using namespace projsum;

namespace {

using Points = std::bitset<256>;

// Forest mirrored by a concrete model: every node is a set of points, a split
// partitions its parent at random, an output is the union of its slots.
struct Model {
  Forest forest{KGroup()};
  std::vector<Points> points;
  std::vector<bool> split;
  std::mt19937_64& rng;

  explicit Model(std::mt19937_64& r) : rng(r) {}

  NodeId add_root(std::uint32_t index) {
    const NodeId id = static_cast<NodeId>(points.size());
    forest.add_root(id, index, KGroup().zero());
    Points p;
    for (std::size_t i = 0; i < 64; ++i) p.set(index * 64 + i);
    points.push_back(p);
    split.push_back(false);
    return id;
  }

  void split_node(NodeId parent, std::uint32_t k) {
    split[parent] = true;
    std::vector<Points> parts(k);
    for (std::size_t i = 0; i < 256; ++i)
      if (points[parent][i]) parts[rng() % k].set(i);
    for (std::uint32_t b = 0; b < k; ++b) {
      const NodeId id = static_cast<NodeId>(points.size());
      forest.add_child(id, parent, b, KGroup().zero());
      points.push_back(parts[b]);
      split.push_back(false);
    }
  }

  void output(const std::vector<NodeId>& slots) {
    const NodeId id = static_cast<NodeId>(points.size());
    Points p;
    for (NodeId s : slots) p |= points[s];
    forest.add_output(id, 0, 0, KGroup().zero(), slots);
    points.push_back(p);
    split.push_back(false);
  }
};

}  // namespace

TEST_CASE("label orthogonality is sound against concrete models") {
  std::mt19937_64 rng(17);
  std::size_t orth_pairs = 0, checked = 0;
  for (int t = 0; t < 300; ++t) {
    Model m(rng);
    m.add_root(0);
    m.add_root(1);
    if (t % 2) m.add_root(2);
    for (int op = 0; op < 30; ++op) {
      const NodeId n = static_cast<NodeId>(rng() % m.points.size());
      if (rng() % 3 != 0) {
        if (!m.split[n]) m.split_node(n, 2 + static_cast<std::uint32_t>(rng() % 3));
      } else {
        // Greedy set of label-orthogonal nodes.
        std::vector<NodeId> slots{n};
        for (int tries = 0; tries < 6; ++tries) {
          const NodeId c = static_cast<NodeId>(rng() % m.points.size());
          bool ok = true;
          for (NodeId s : slots) ok = ok && m.forest.orth(s, c);
          if (ok) slots.push_back(c);
        }
        if (slots.size() >= 2) m.output(slots);
      }
    }
    const auto count = static_cast<NodeId>(m.points.size());
    for (NodeId a = 0; a < count; ++a)
      for (NodeId b = a + 1; b < count; ++b) {
        ++checked;
        if (m.forest.orth(a, b)) {
          ++orth_pairs;
          CHECK((m.points[a] & m.points[b]).none());
        }
      }
  }
  CHECK(orth_pairs > 1000);
  CHECK(checked > orth_pairs);
}

TEST_CASE("siblings, cousins and descendants") {
  Forest f{KGroup()};
  const KClass z = KGroup().zero();
  f.add_root(0, 0, z);
  f.add_root(1, 1, z);
  f.add_child(2, 0, 0, z);
  f.add_child(3, 0, 1, z);
  f.add_child(4, 2, 0, z);
  f.add_child(5, 2, 1, z);
  CHECK(f.orth(0, 1));
  CHECK(f.orth(2, 3));
  CHECK(f.orth(4, 3));
  CHECK(f.orth(4, 5));
  CHECK_FALSE(f.orth(0, 4));
  CHECK_FALSE(f.orth(2, 5));
  CHECK_FALSE(f.orth(2, 2));
  // An output over {4, 3} split again does not become orthogonal to 5's cousins by accident.
  f.add_output(6, 0, 0, z, {4, 3});
  CHECK(f.orth(6, 5));
  CHECK(f.orth(6, 1));
  CHECK_FALSE(f.orth(6, 0));
  f.add_child(7, 6, 0, z);
  f.add_child(8, 3, 1, z);
  CHECK_FALSE(f.orth(7, 8));
  CHECK(f.orth(7, 5));
}

TEST_CASE("pairwise and sweep orthogonality agree") {
  Forest f{KGroup()};
  const KClass z = KGroup().zero();
  f.add_root(0, 0, z);
  f.add_child(1, 0, 0, z);
  f.add_child(2, 0, 1, z);
  f.add_child(3, 0, 2, z);
  f.add_child(4, 1, 0, z);
  f.add_child(5, 1, 1, z);
  std::vector<const LabelSet*> sets;
  for (NodeId n : {4, 5, 2, 3}) sets.push_back(&f.at(n).labels);
  CHECK_FALSE(first_non_orthogonal(sets).has_value());
  sets.push_back(&f.at(1).labels);
  const auto bad = first_non_orthogonal(sets);
  REQUIRE(bad.has_value());
  CHECK(bad->first == 0);
  CHECK(bad->second == 4);
}

TEST_CASE("factored projections") {
  SparseVector v;
  v.entries = {{0, 0.6}, {2, 0.8}};
  const auto f = FactoredProjection::rank_one(3, v);
  const SymMatrix m = f.to_dense();
  CHECK(m(0, 0) == doctest::Approx(0.36));
  CHECK(m(0, 2) == doctest::Approx(0.48));
  CHECK(m(1, 1) == 0.0);
  CHECK(is_projection(m));
  CHECK(is_projection(FactoredProjection::identity(4).to_dense()));
  CHECK(FactoredProjection::identity(4).columns().size() == 4);
}

TEST_CASE("projection count") {
  Certificate c;
  c.claims.push_back(Discharge{0});
  MatrixClaim m;
  m.matrices.resize(3);
  c.claims.push_back(m);
  m.terminal = false;
  c.claims.push_back(m);
  CHECK(count_projections(c) == 4);
}
