#include "projsum/fillmore.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>

namespace projsum {

const char* to_string(InfeasibleReason r) {
  switch (r) {
    case InfeasibleReason::NonIntegerTrace: return "NonIntegerTrace";
    case InfeasibleReason::RankExceedsTrace: return "RankExceedsTrace";
  }
  return "?";
}

double SparseVector::norm() const {
  double s = 0.0;
  for (auto [i, v] : entries) s += v * v;
  return std::sqrt(s);
}

SymMatrix RankOneSet::reconstruct() const {
  SymMatrix m(dim);
  for (const auto& v : vectors)
    for (std::size_t a = 0; a < v.entries.size(); ++a)
      for (std::size_t b = a; b < v.entries.size(); ++b)
        m.add(v.entries[a].first, v.entries[b].first, v.entries[a].second * v.entries[b].second);
  return m;
}

double RankOneSet::max_norm_defect() const {
  double worst = 0.0;
  for (const auto& v : vectors) worst = std::max(worst, std::fabs(v.norm() - 1.0));
  return worst;
}

namespace {

std::size_t rounded(double x) { return static_cast<std::size_t>(std::llround(x)); }

std::variant<std::size_t, Infeasible> feasibility_from(const PsdProfile& p, const FillmoreOptions& opts) {
  if (!p.is_psd) throw FillmoreError(FillmoreError::Kind::NotPSD, "matrix is not positive semidefinite");
  const double tr = p.trace;
  const double nearest = std::round(tr);
  if (nearest < 1.0 || std::fabs(tr - nearest) > opts.coeff_tol * std::max(1.0, tr)) {
    std::ostringstream os;
    os << "trace " << tr << " is not a positive integer";
    return Infeasible{InfeasibleReason::NonIntegerTrace, os.str()};
  }
  const std::size_t m = rounded(nearest);
  if (p.rank > m) {
    std::ostringstream os;
    os << "rank " << p.rank << " exceeds trace " << m;
    return Infeasible{InfeasibleReason::RankExceedsTrace, os.str()};
  }
  return m;
}

SparseVector sparsify(std::span<const double> dense, std::size_t offset_limit) {
  SparseVector v;
  for (std::size_t i = 0; i < std::min(dense.size(), offset_limit); ++i)
    if (dense[i] != 0.0) v.entries.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  return v;
}

}  // namespace

std::variant<std::size_t, Infeasible> feasibility(const SymMatrix& a, const FillmoreOptions& opts) {
  return feasibility_from(psd_profile(a, opts.matrix_tol, opts.dimension_cap), opts);
}

DenseMatrix schur_horn_unit_diag(std::span<const double> lambda, const FillmoreOptions& opts) {
  const std::size_t m = lambda.size();
  if (m == 0) return DenseMatrix();

  std::vector<double> sorted(lambda.begin(), lambda.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  if (std::fabs(total - static_cast<double>(m)) > opts.coeff_tol * static_cast<double>(m) + 1e-12) {
    std::ostringstream os;
    os << "eigenvalues sum to " << total << ", expected " << m;
    throw FillmoreError(FillmoreError::Kind::MajorizationFailure, os.str());
  }
  double partial = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    partial += sorted[k];
    if (sorted[k] < -opts.coeff_tol || partial < static_cast<double>(k + 1) - opts.coeff_tol * static_cast<double>(m)) {
      std::ostringstream os;
      os << "eigenvalues fail to majorize the unit vector at k=" << (k + 1);
      throw FillmoreError(FillmoreError::Kind::MajorizationFailure, os.str());
    }
  }

  DenseMatrix q = DenseMatrix::identity(m);
  std::vector<double> d(lambda.begin(), lambda.end());
  std::vector<std::size_t> active(m);
  std::iota(active.begin(), active.end(), 0);

  const double flat = 1e-15 * static_cast<double>(m);
  while (active.size() > 1) {
    auto [lo_it, hi_it] = std::minmax_element(active.begin(), active.end(),
                                              [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    const std::size_t j = *lo_it;
    const std::size_t i = *hi_it;
    const double a = d[i];
    const double b = d[j];
    if (a - 1.0 <= flat || 1.0 - b <= flat) {
      // Already unit (to rounding); deflate without rotating.
      const std::size_t done = (1.0 - b <= flat) ? j : i;
      active.erase(std::find(active.begin(), active.end(), done));
      continue;
    }
    double s2 = std::clamp((1.0 - b) / (a - b), 0.0, 1.0);
    const double s = std::sqrt(s2);
    const double c = std::sqrt(1.0 - s2);
    auto qi = q.row(i);
    auto qj = q.row(j);
    for (std::size_t k = 0; k < m; ++k) {
      const double x = qi[k];
      const double y = qj[k];
      qi[k] = c * x - s * y;
      qj[k] = s * x + c * y;
    }
    d[i] = a + b - 1.0;
    d[j] = 1.0;
    active.erase(std::find(active.begin(), active.end(), j));
  }
  return q;
}

RankOneSet fillmore_decompose(const FillmoreInput& input, const FillmoreOptions& opts) {
  const std::size_t n = input.a.dim();
  const std::size_t m = input.m;
  EigenResult eig = sym_eigen(input.a, opts.dimension_cap);
  PsdProfile prof = psd_profile_from_eigenvalues(eig.values, input.a.trace(), opts.matrix_tol);
  auto feas = feasibility_from(prof, opts);
  if (auto* bad = std::get_if<Infeasible>(&feas)) {
    throw FillmoreError(bad->reason == InfeasibleReason::NonIntegerTrace
                            ? FillmoreError::Kind::NonIntegerTrace
                            : FillmoreError::Kind::RankExceedsTrace,
                        bad->detail);
  }
  if (std::get<std::size_t>(feas) != m) {
    std::ostringstream os;
    os << "trace " << prof.trace << " does not match requested count " << m;
    throw FillmoreError(FillmoreError::Kind::NonIntegerTrace, os.str());
  }
  if (m > opts.dimension_cap) throw DimensionCapExceeded(m, opts.dimension_cap);

  // Pad (or truncate the numerically zero tail of) the spectrum to length m.
  const std::size_t kept = std::min(n, m);
  std::vector<double> lambda(m, 0.0);
  for (std::size_t i = 0; i < kept; ++i) lambda[i] = std::max(eig.values[i], 0.0);

  DenseMatrix v = schur_horn_unit_diag(lambda, opts);

  RankOneSet out;
  out.dim = n;
  out.vectors.reserve(m);
  std::vector<double> root(kept);
  for (std::size_t i = 0; i < kept; ++i) root[i] = std::sqrt(lambda[i]);
  std::vector<double> dense(n);
  for (std::size_t col = 0; col < m; ++col) {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (std::size_t i = 0; i < kept; ++i) {
      const double w = root[i] * v(col, i);
      if (w == 0.0) continue;
      for (std::size_t r = 0; r < n; ++r) dense[r] += eig.vectors(r, i) * w;
    }
    out.vectors.push_back(sparsify(dense, n));
  }
  return out;
}

namespace {

// Partial mass of one coordinate inside a greedy block.
struct Piece {
  std::uint32_t coord;
  double mass;
};

// Solves a block whose masses sum to its size: one vector per piece.
void solve_block(const std::vector<Piece>& block, const FillmoreOptions& opts, std::vector<SparseVector>& out) {
  const std::size_t s = block.size();
  if (s == 1) {
    out.push_back(SparseVector{{{block[0].coord, std::sqrt(block[0].mass)}}});
    return;
  }
  std::vector<double> lambda(s);
  for (std::size_t i = 0; i < s; ++i) lambda[i] = block[i].mass;
  // Absorb float drift so the block sums to its size exactly enough for the Schur-Horn step.
  const double drift = static_cast<double>(s) - std::accumulate(lambda.begin(), lambda.end(), 0.0);
  FillmoreOptions local = opts;
  local.coeff_tol = std::max(opts.coeff_tol, std::fabs(drift) + 1e-14);
  DenseMatrix v = schur_horn_unit_diag(lambda, local);

  // Pieces of one coordinate inside a block never repeat, so coordinates are distinct.
  std::vector<std::size_t> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return block[x].coord < block[y].coord; });
  for (std::size_t col = 0; col < s; ++col) {
    SparseVector vec;
    for (std::size_t k : order) {
      const double w = std::sqrt(std::max(block[k].mass, 0.0)) * v(col, k);
      if (w != 0.0) vec.entries.emplace_back(block[k].coord, w);
    }
    out.push_back(std::move(vec));
  }
}

std::optional<std::vector<SparseVector>> greedy_blocks(std::span<const double> diag, const FillmoreOptions& opts) {
  constexpr double eps = 1e-12;
  std::deque<std::uint32_t> bigs;
  std::deque<std::uint32_t> smalls;
  for (std::uint32_t i = 0; i < diag.size(); ++i) {
    if (diag[i] <= eps) continue;
    (diag[i] >= 1.0 - eps ? bigs : smalls).push_back(i);
  }
  const double total_bigs = static_cast<double>(bigs.size());
  const double total_smalls = static_cast<double>(smalls.size());

  std::vector<SparseVector> out;
  std::vector<Piece> open;
  double deficit = 0.0;

  auto start_from = [&](std::uint32_t coord, double leftover) {
    while (leftover >= 1.0 - eps) {
      out.push_back(SparseVector{{{coord, 1.0}}});
      leftover -= 1.0;
    }
    if (leftover > eps) {
      open.push_back({coord, leftover});
      deficit = 1.0 - leftover;
    }
  };
  // Interleave small coordinates proportionally among the large ones.
  auto take_small = [&]() {
    if (smalls.empty()) return false;
    if (bigs.empty()) return true;
    const double used_s = (total_smalls - static_cast<double>(smalls.size())) / total_smalls;
    const double used_b = (total_bigs - static_cast<double>(bigs.size())) / total_bigs;
    return used_s <= used_b;
  };

  while (!bigs.empty() || !smalls.empty()) {
    const bool small = take_small();
    const std::uint32_t coord = small ? smalls.front() : bigs.front();
    (small ? smalls : bigs).pop_front();
    const double a = diag[coord];
    if (open.empty()) {
      start_from(coord, a);
      continue;
    }
    if (a >= deficit + 1.0 - eps) {
      const double x = std::min(a, deficit + 1.0);
      open.push_back({coord, x});
      solve_block(open, opts, out);
      open.clear();
      deficit = 0.0;
      start_from(coord, a - x);
    } else {
      open.push_back({coord, a});
      deficit += 1.0 - a;
    }
  }
  if (!open.empty()) {
    if (std::fabs(deficit) > 1e-9) return std::nullopt;
    solve_block(open, opts, out);
  }
  return out;
}

}  // namespace

RankOneSet fillmore_diagonal_fast(std::span<const double> diagonal, std::size_t m, const FillmoreOptions& opts) {
  const std::size_t n = diagonal.size();
  if (n > opts.dimension_cap) throw DimensionCapExceeded(n, opts.dimension_cap);
  double total = 0.0;
  std::size_t positive = 0;
  for (double x : diagonal) {
    if (x < -opts.coeff_tol) throw FillmoreError(FillmoreError::Kind::NotPSD, "negative diagonal entry");
    total += x;
    if (x > opts.coeff_tol) ++positive;
  }
  if (std::fabs(total - static_cast<double>(m)) > opts.coeff_tol * std::max(1.0, static_cast<double>(m))) {
    std::ostringstream os;
    os << "diagonal sums to " << total << ", expected " << m;
    throw FillmoreError(FillmoreError::Kind::NonIntegerTrace, os.str());
  }
  if (positive > m) throw FillmoreError(FillmoreError::Kind::RankExceedsTrace, "rank exceeds trace");

  if (auto vecs = greedy_blocks(diagonal, opts); vecs && vecs->size() == m) {
    RankOneSet out;
    out.dim = n;
    out.vectors = std::move(*vecs);
    return out;
  }
  return fillmore_decompose(FillmoreInput{SymMatrix::diagonal(diagonal), m}, opts);
}

RankOneSet fillmore_diagonal_fast(std::span<const BigRational> diagonal, std::size_t m, const FillmoreOptions& opts) {
  BigRational total(0);
  for (const auto& x : diagonal) total += x;
  if (total != BigRational(static_cast<long>(m)))
    throw FillmoreError(FillmoreError::Kind::NonIntegerTrace, "diagonal does not sum exactly to " + std::to_string(m));
  std::vector<double> d(diagonal.size());
  std::transform(diagonal.begin(), diagonal.end(), d.begin(), [](const BigRational& r) { return r.to_double(); });
  return fillmore_diagonal_fast(std::span<const double>(d), m, opts);
}

}  // namespace projsum
