#include "projsum/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projsum/choose_rational.hpp"

namespace projsum {

namespace {

bool is_one(const Coefficient& c) {
  return c.is_exact() ? c.exact_value() == BigRational(1) : c.to_double() == 1.0;
}

bool is_exact_one(const Coefficient& c) { return c.is_exact() && c.exact_value() == BigRational(1); }

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t to_size(const mpz_class& z) {
  if (z < 0 || !z.fits_ulong_p()) return kSaturated;
  return z.get_ui();
}

std::size_t sat_add(std::size_t a, std::size_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::size_t sat_mul(std::size_t a, std::size_t b) {
  return (a != 0 && b > kSaturated / a) ? kSaturated : a * b;
}

FillmoreOptions fillmore_opts(const StrategyOptions& o) { return {o.matrix_tol, o.coeff_tol, o.dimension_cap}; }

}  // namespace

const char* to_string(Decomposability d) {
  switch (d) {
    case Decomposability::Decomposable: return "decomposable";
    case Decomposability::AlreadyProjection: return "already-projection";
    case Decomposability::NotDecomposable: return "not-decomposable";
  }
  return "?";
}

Decomposability check_decomposable(const SpectralElement& a) {
  bool all_proj = true, any_one = false, big = false;
  for (const auto& b : a.blocks) {
    if (b.coeff.sign() < 0) throw NegativeCoefficient("negative coefficient " + b.coeff.to_string());
    if (is_one(b.coeff)) any_one = true;
    else if (!b.coeff.is_zero()) all_proj = false;
    if (b.coeff > Coefficient(1) && !is_one(b.coeff)) big = true;
  }
  if (all_proj && any_one) return Decomposability::AlreadyProjection;
  if (big) return Decomposability::Decomposable;
  return Decomposability::NotDecomposable;
}

RationalParams rational_params(const BigRational& alpha, const BigRational& beta) {
  if (!(alpha > BigRational(1))) throw OutOfRange("rational pair needs alpha > 1, got " + alpha.to_string());
  if (beta.sign() < 0) throw OutOfRange("rational pair needs beta >= 0, got " + beta.to_string());
  RationalParams p{alpha, beta};
  const mpz_class m = lcm(alpha.denominator(), beta.denominator());
  const mpz_class k = (alpha * BigRational(mpq_class(m))).numerator();
  const mpz_class h = (beta * BigRational(mpq_class(m))).numerator();
  mpz_class r = 1;
  mpz_class dim = m, count = k;
  if (beta.sign() != 0) {
    r = (m + (k - m) - 1) / (k - m);
    dim = r * m + m;
    count = r * k + h;
  }
  p.dimension = to_size(dim);
  p.count = to_size(count);
  if (dim.fits_slong_p() && count.fits_slong_p()) {
    p.k = k.get_si();
    p.h = h.get_si();
    p.m = m.get_si();
    p.r = r.get_si();
  }
  return p;
}

AlphaPParams alpha_p_params(const Coefficient& alpha, long n) {
  if (!(alpha > Coefficient(1)) || !(alpha < Coefficient(2)))
    throw OutOfRange("alpha must lie in (1, 2), got " + alpha.to_string());
  if (n < 2) throw OutOfRange("class order must be at least 2");
  const Coefficient one(1), nn(n);
  const Coefficient x = one / (alpha - one) - one / nn;
  AlphaPParams p;
  p.n = n;
  p.m = x.floor_long();
  p.delta = x.fractional_part();
  p.b_trace = Coefficient(p.m * n + 1) * alpha + nn * (alpha - one) * p.delta;
  p.c = alpha - (alpha - one) * p.delta;
  return p;
}

ExtensionParams extension_params(const Coefficient& alpha, const Coefficient& beta) {
  if (!(alpha > Coefficient(1))) throw OutOfRange("alpha must exceed 1, got " + alpha.to_string());
  if (beta.sign() < 0 || !(beta < Coefficient(1))) throw OutOfRange("beta must lie in [0, 1), got " + beta.to_string());
  const Coefficient one(1);
  const Coefficient x = (Coefficient(2) - beta) / (alpha - one);
  ExtensionParams p;
  p.n = x.floor_long();
  p.delta = x.fractional_part();
  p.epsilon = p.delta * (alpha - one);
  p.b_trace = Coefficient(p.n) * alpha + beta + p.epsilon;
  return p;
}

RhoChoice choose_rhos(const Coefficient& alpha, const Coefficient& beta, std::size_t cap) {
  if (!(alpha > Coefficient(1))) throw OutOfRange("alpha must exceed 1, got " + alpha.to_string());
  if (beta.sign() <= 0) throw OutOfRange("beta must be positive, got " + beta.to_string());
  const BigRational a = alpha.to_rational(), be = beta.to_rational();
  const bool approx = !alpha.is_exact() || !beta.is_exact();
  const BigRational in = approx ? BigRational(1) - BigRational(1, 1000000000) : BigRational(1);
  const BigRational out = approx ? BigRational(1) + BigRational(1, 1000000000) : BigRational(1);
  const BigRational top = a * in;

  // rho1 needs a denominator above 1/(alpha-1); search a few multiples past that.
  const double gap = (a - BigRational(1)).to_double();
  const long max_den = std::clamp(static_cast<long>(std::ceil(4.0 / gap)), 32L, 2L * static_cast<long>(std::min<std::size_t>(cap, 100000)));
  std::optional<RhoChoice> best;
  std::size_t best_cost = kSaturated;
  for (long den = 1; den <= max_den; ++den) {
    const BigRational bden(den);
    for (long num = den + 1;; ++num) {
      const BigRational rho1(num, den);
      if (!(rho1 < top)) break;
      if (rho1.denominator() != den) continue;
      const BigRational d = a - rho1;
      const BigRational lo2 = d / BigRational(3) * out, hi2 = d * BigRational(2, 3) * in;
      const BigRational lo3 = be / BigRational(3) * out, hi3 = be * BigRational(2, 3) * in;
      if (!(lo2 < hi2) || !(lo3 < hi3)) continue;
      const BigRational rho2 = choose_rational(lo2 * bden, hi2 * bden) / bden;
      const BigRational rho3 = choose_rational(lo3 * bden, hi3 * bden) / bden;
      if (rho2 == BigRational(1) || rho3 == BigRational(1)) continue;
      const auto p2 = rational_params(rho1, rho2), p3 = rational_params(rho1, rho3);
      const std::size_t cost = sat_add(sat_mul(12, p2.dimension), sat_mul(6, p3.dimension));
      if (!best || cost < best_cost) {
        best = RhoChoice{rho1, rho2, rho3, p2.dimension, p3.dimension};
        best_cost = cost;
      }
    }
  }
  if (!best) throw OutOfRange("no rational splitting found for alpha " + alpha.to_string());
  const std::size_t worst = std::max(best->dim2, best->dim3);
  if (worst > cap) throw DimensionCapExceeded(worst, cap);
  return *best;
}

CertificateBuilder::CertificateBuilder(KGroup group, StrategyOptions opts)
    : group_(std::move(group)), opts_(opts) {
  cert_.group = group_;
  cert_.tolerance = opts_.matrix_tol;
  cert_.coeff_tolerance = opts_.coeff_tol;
}

NodeId CertificateBuilder::fresh(const KClass& kclass) {
  classes_.push_back(kclass);
  return static_cast<NodeId>(classes_.size() - 1);
}

NodeId CertificateBuilder::add_root(const Coefficient& coeff, const KClass& kclass) {
  if (classes_.size() != cert_.input.size()) throw std::logic_error("roots must be added before other nodes");
  cert_.input.push_back({coeff, kclass});
  return fresh(kclass);
}

std::vector<NodeId> CertificateBuilder::split(NodeId parent, const std::vector<KClass>& classes) {
  NodeSplit s{parent, {}};
  std::vector<NodeId> ids;
  for (const auto& c : classes) {
    ids.push_back(fresh(c));
    s.children.push_back({ids.back(), c});
  }
  cert_.claims.emplace_back(std::move(s));
  return ids;
}

std::vector<NodeId> CertificateBuilder::split_theta(NodeId parent, std::size_t count) {
  return split(parent, std::vector<KClass>(count, theta()));
}

void CertificateBuilder::coeff_split(NodeId node, const Coefficient& from, std::vector<Coefficient> into) {
  cert_.claims.emplace_back(CoeffSplit{node, from, std::move(into)});
}

void CertificateBuilder::discharge(NodeId node) {
  cert_.claims.emplace_back(Discharge{node});
  ++projections_;
}

void CertificateBuilder::check_dimension(std::size_t dim) const {
  if (dim > opts_.dimension_cap) throw DimensionCapExceeded(dim, opts_.dimension_cap);
}

namespace {

std::vector<FactoredProjection> factors(const RankOneSet& v) {
  std::vector<FactoredProjection> out;
  out.reserve(v.vectors.size());
  for (const auto& x : v.vectors) out.push_back(FactoredProjection::rank_one(v.dim, x));
  return out;
}

}  // namespace

void CertificateBuilder::terminal_claim(std::vector<NodeId> slots, std::vector<Coefficient> alphas,
                                        const RankOneSet& vectors, const std::string& strategy) {
  MatrixClaim m;
  m.id = next_claim_++;
  m.slots = std::move(slots);
  m.alphas = std::move(alphas);
  m.matrices = factors(vectors);
  m.terminal = true;
  m.strategy = strategy;
  projections_ += m.matrices.size();
  cert_.claims.emplace_back(std::move(m));
}

std::vector<NodeId> CertificateBuilder::registered_claim(std::vector<NodeId> slots, std::vector<Coefficient> alphas,
                                                         const Coefficient& scale, const RankOneSet& vectors,
                                                         const std::string& strategy) {
  MatrixClaim m;
  m.id = next_claim_++;
  const KClass slot_class = class_of(slots.front());
  m.slots = std::move(slots);
  m.alphas = std::move(alphas);
  m.scale = scale;
  m.matrices = factors(vectors);
  m.terminal = false;
  m.strategy = strategy;
  for (std::size_t i = 0; i < m.matrices.size(); ++i) m.outputs.push_back(fresh(slot_class));
  std::vector<NodeId> outs = m.outputs;
  cert_.claims.emplace_back(std::move(m));
  return outs;
}

NodeId CertificateBuilder::regroup(const std::vector<NodeId>& slots, const Coefficient& scale) {
  MatrixClaim m;
  m.id = next_claim_++;
  m.slots = slots;
  m.alphas.assign(slots.size(), Coefficient(1));
  m.scale = scale;
  m.matrices.push_back(FactoredProjection::identity(slots.size()));
  m.terminal = false;
  m.strategy = "regroup";
  const NodeId out = fresh(class_of(slots.front()).times(static_cast<std::int64_t>(slots.size())));
  m.outputs.push_back(out);
  cert_.claims.emplace_back(std::move(m));
  return out;
}

Certificate CertificateBuilder::finish() && {
  cert_.claimed_count = projections_;
  return std::move(cert_);
}

RankOneSet diagonal_vectors(const std::vector<Coefficient>& d, const StrategyOptions& opts) {
  const FillmoreOptions fo = fillmore_opts(opts);
  const bool exact = std::all_of(d.begin(), d.end(), [](const Coefficient& c) { return c.is_exact(); });
  if (exact) {
    std::vector<BigRational> q;
    BigRational sum(0);
    for (const auto& c : d) {
      q.push_back(c.exact_value());
      sum = sum + q.back();
    }
    if (!sum.is_integer()) throw FillmoreError(FillmoreError::Kind::NonIntegerTrace, "trace " + sum.to_string());
    return fillmore_diagonal_fast(std::span<const BigRational>(q), to_size(sum.floor()), fo);
  }
  std::vector<double> x;
  double sum = 0;
  for (const auto& c : d) {
    x.push_back(c.to_double());
    sum += x.back();
  }
  const double m = std::round(sum);
  if (std::abs(sum - m) > opts.coeff_tol * std::max(1.0, sum))
    throw FillmoreError(FillmoreError::Kind::NonIntegerTrace, "trace " + std::to_string(sum));
  return fillmore_diagonal_fast(std::span<const double>(x), static_cast<std::size_t>(m), fo);
}

std::vector<NodeId> strat_big(CertificateBuilder& b, const Coefficient& gamma, NodeId p, const Coefficient& scale) {
  const Coefficient lo = Coefficient::exact(3, 2), hi(3);
  if (gamma < lo || gamma > hi) throw OutOfRange("gamma must lie in [3/2, 3], got " + gamma.to_string());
  const Coefficient x = Coefficient(2) * gamma - Coefficient(3);
  const Coefficient y = Coefficient(3) - gamma;
  const Coefficient& c = scale;
  const bool terminal = is_exact_one(c);

  const auto halves = b.split_theta(p, 2);
  const NodeId p1 = halves[0], p2 = halves[1];
  b.coeff_split(p1, c * gamma, {c * x, c * y});
  b.coeff_split(p2, c * gamma, {c * y, c * x});
  const auto p2s = b.split_theta(p2, 2);

  const std::vector<Coefficient> pattern{x, y, y};
  const RankOneSet vecs = diagonal_vectors(pattern, b.options());
  std::vector<NodeId> outs;
  if (terminal) b.terminal_claim({p1, p2s[0], p2s[1]}, pattern, vecs, "big:a1");
  else outs = b.registered_claim({p1, p2s[0], p2s[1]}, pattern, c, vecs, "big:a1");

  const NodeId big_p2 = b.regroup({p2s[0], p2s[1]}, c * x);
  const auto p1s = b.split_theta(p1, 2);
  if (terminal) {
    b.terminal_claim({big_p2, p1s[0], p1s[1]}, pattern, vecs, "big:a2");
  } else {
    auto more = b.registered_claim({big_p2, p1s[0], p1s[1]}, pattern, c, vecs, "big:a2");
    outs.insert(outs.end(), more.begin(), more.end());
  }
  return outs;
}

void strat_rational(CertificateBuilder& b, const BigRational& alpha, const BigRational& beta, NodeId p,
                    std::optional<NodeId> q) {
  const RationalParams rp = rational_params(alpha, beta);
  b.check_dimension(rp.dimension);
  const bool use_q = beta.sign() != 0;
  if (use_q && !q) throw std::invalid_argument("rational pair with beta > 0 needs a second node");
  if (!use_q && q) b.coeff_split(*q, Coefficient(beta), {});

  const auto ps = b.split_theta(p, static_cast<std::size_t>(use_q ? rp.r * rp.m : rp.m));
  std::vector<NodeId> slots = ps;
  std::vector<Coefficient> diag(ps.size(), Coefficient(alpha));
  if (use_q) {
    const auto qs = b.split_theta(*q, static_cast<std::size_t>(rp.m));
    slots.insert(slots.end(), qs.begin(), qs.end());
    diag.insert(diag.end(), qs.size(), Coefficient(beta));
  }
  const RankOneSet vecs = diagonal_vectors(diag, b.options());
  if (vecs.vectors.size() != rp.count) throw std::logic_error("rational pair produced the wrong count");
  b.terminal_claim(std::move(slots), std::move(diag), vecs, "rational");
}

void strat_real(CertificateBuilder& b, const Coefficient& alpha, const Coefficient& beta, NodeId p,
                std::optional<NodeId> q) {
  if (!(alpha > Coefficient(1))) throw OutOfRange("alpha must exceed 1, got " + alpha.to_string());
  if (beta.sign() < 0) throw OutOfRange("beta must be nonnegative, got " + beta.to_string());
  const std::size_t cap = b.options().dimension_cap;

  if (beta.is_zero()) {
    if (q) b.coeff_split(*q, beta, {});
    if (alpha >= Coefficient::exact(3, 2) && alpha <= Coefficient(3)) {
      strat_big(b, alpha, p, Coefficient(1));
      return;
    }
    if (alpha.is_exact()) {
      const std::size_t direct = to_size(alpha.exact_value().denominator());
      if (direct <= cap) {
        std::size_t split_cost = kSaturated;
        try {
          const RhoChoice rc = choose_rhos(alpha, alpha, cap);
          split_cost = std::max(rc.dim2, rc.dim3);
        } catch (const DimensionCapExceeded&) {
        } catch (const OutOfRange&) {
        }
        if (direct <= split_cost) {
          strat_rational(b, alpha.exact_value(), BigRational(0), p, std::nullopt);
          return;
        }
      }
    }
    const auto halves = b.split_theta(p, 2);
    strat_real(b, alpha, alpha, halves[0], halves[1]);
    return;
  }
  if (!q) throw std::invalid_argument("strat_real with beta > 0 needs a second node");

  const RhoChoice rc = choose_rhos(alpha, beta, cap);
  const Coefficient rho1(rc.rho1), rho2(rc.rho2), rho3(rc.rho3);
  const Coefficient rest = alpha - rho1;

  const auto halves = b.split_theta(p, 2);
  const auto left = b.split_theta(halves[0], 6);
  const auto right = b.split_theta(halves[1], 12);
  std::vector<NodeId> ps = left;
  ps.insert(ps.end(), right.begin(), right.end());
  for (NodeId n : ps) b.coeff_split(n, alpha, {rho1, rest});
  const NodeId big_left = b.regroup(left, rest);
  const NodeId big_right = b.regroup(right, rest);

  const Coefficient gamma = rest / rho2;
  std::vector<NodeId> qs = strat_big(b, gamma, big_right, rho2);
  const auto q_left = strat_big(b, gamma, big_left, rho2);
  const auto q_beta = strat_big(b, beta / rho3, *q, rho3);
  qs.insert(qs.end(), q_left.begin(), q_left.end());
  qs.insert(qs.end(), q_beta.begin(), q_beta.end());
  if (qs.size() != 18) throw std::logic_error("expected 18 registered outputs");

  for (std::size_t j = 0; j < 18; ++j) strat_rational(b, rc.rho1, j < 12 ? rc.rho2 : rc.rho3, ps[j], qs[j]);
}

void strat_alpha_p(CertificateBuilder& b, const Coefficient& alpha_in, NodeId p) {
  Coefficient alpha = alpha_in;
  if (is_one(alpha)) {
    b.discharge(p);
    return;
  }
  if (!(alpha > Coefficient(1))) throw OutOfRange("alpha must exceed 1, got " + alpha.to_string());
  if (alpha >= Coefficient(2)) {
    const long f = alpha.floor_long();
    const bool integral = alpha.fractional_part().is_zero();
    const long units = integral ? f : f - 1;
    std::vector<Coefficient> into(static_cast<std::size_t>(units), Coefficient(1));
    const Coefficient rest = alpha - Coefficient(units);
    if (!integral) into.push_back(rest);
    b.coeff_split(p, alpha, std::move(into));
    for (long i = 0; i < units; ++i) b.discharge(p);
    if (integral) return;
    alpha = rest;
  }

  const KClass cls = b.class_of(p);
  const long n = static_cast<long>(class_order(cls));
  if (n == 1) {
    strat_real(b, alpha, Coefficient(0), p, std::nullopt);
    return;
  }
  const AlphaPParams ap = alpha_p_params(alpha, n);
  const long total = (ap.m + 1) * n + 1;
  if (ap.b_trace.is_exact() && !(ap.b_trace == Coefficient(total)))
    throw std::logic_error("trace identity failed: " + ap.b_trace.to_string());
  b.check_dimension(static_cast<std::size_t>(total));

  const auto kids = b.split(p, std::vector<KClass>(static_cast<std::size_t>(total), cls));
  const std::size_t head = static_cast<std::size_t>(ap.m * n + 1);
  const Coefficient e = (alpha - Coefficient(1)) * ap.delta;
  std::vector<Coefficient> diag(kids.size(), alpha);
  for (std::size_t j = head; j < kids.size(); ++j) {
    b.coeff_split(kids[j], alpha, {e, ap.c});
    diag[j] = e;
  }
  b.terminal_claim(kids, diag, diagonal_vectors(diag, b.options()), "alpha_p");
  const NodeId tail = b.regroup(std::vector<NodeId>(kids.begin() + static_cast<std::ptrdiff_t>(head), kids.end()), ap.c);
  strat_real(b, ap.c, Coefficient(0), tail, std::nullopt);
}

void strat_extension(CertificateBuilder& b, const Coefficient& alpha, const Coefficient& beta, NodeId p, NodeId q) {
  const ExtensionParams ep = extension_params(alpha, beta);
  if (ep.b_trace.is_exact() && !(ep.b_trace == Coefficient(ep.n + 2)))
    throw std::logic_error("trace identity failed: " + ep.b_trace.to_string());
  b.check_dimension(static_cast<std::size_t>(ep.n + 2));

  const KClass qc = b.class_of(q);
  std::vector<KClass> classes{b.class_of(p) - qc.times(ep.n + 1)};
  classes.insert(classes.end(), static_cast<std::size_t>(ep.n + 1), qc);
  const auto kids = b.split(p, classes);
  const NodeId rest = kids[0], q0 = kids[1];
  b.coeff_split(q0, alpha, {ep.epsilon, alpha - ep.epsilon});

  std::vector<NodeId> slots(kids.begin() + 1, kids.end());
  slots.push_back(q);
  std::vector<Coefficient> diag(slots.size(), alpha);
  diag.front() = ep.epsilon;
  diag.back() = beta;
  b.terminal_claim(slots, diag, diagonal_vectors(diag, b.options()), "extension");

  strat_alpha_p(b, alpha, rest);
  strat_alpha_p(b, alpha - ep.epsilon, q0);
}

Certificate strat_spectral(const SpectralElement& a, const StrategyOptions& opts) {
  if (a.blocks.empty()) throw NotDecomposable("empty-element");
  const Decomposability kind = check_decomposable(a);
  if (kind == Decomposability::NotDecomposable) throw NotDecomposable("norm-le-1-not-projection");

  CertificateBuilder b(a.group, opts);
  std::vector<NodeId> roots;
  for (const auto& blk : a.blocks) roots.push_back(b.add_root(blk.coeff, blk.kclass));

  auto settle_small = [&](std::size_t i) {
    const Coefficient& c = a.blocks[i].coeff;
    if (c.is_zero()) b.coeff_split(roots[i], c, {});
    else if (is_one(c)) b.discharge(roots[i]);
    else return false;
    return true;
  };

  if (kind == Decomposability::AlreadyProjection) {
    for (std::size_t i = 0; i < a.blocks.size(); ++i) settle_small(i);
    return std::move(b).finish();
  }

  std::size_t top = 0;
  for (std::size_t i = 1; i < a.blocks.size(); ++i)
    if (a.blocks[top].coeff < a.blocks[i].coeff) top = i;
  const Coefficient& alpha = a.blocks[top].coeff;

  std::vector<std::size_t> partners;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (i == top || settle_small(i)) continue;
    if (a.blocks[i].coeff > Coefficient(1)) strat_alpha_p(b, a.blocks[i].coeff, roots[i]);
    else partners.push_back(i);
  }

  const NodeId p = roots[top];
  if (partners.empty()) {
    strat_alpha_p(b, alpha, p);
  } else if (partners.size() == 1) {
    strat_extension(b, alpha, a.blocks[partners[0]].coeff, p, roots[partners[0]]);
  } else {
    std::vector<KClass> classes(partners.size() - 1, b.theta());
    classes.push_back(b.class_of(p));
    const auto pieces = b.split(p, classes);
    for (std::size_t j = 0; j < partners.size(); ++j)
      strat_extension(b, alpha, a.blocks[partners[j]].coeff, pieces[j], roots[partners[j]]);
  }
  return std::move(b).finish();
}

}  // namespace projsum
