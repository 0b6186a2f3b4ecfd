#include "projsum/ktheory.hpp"

#include <cctype>
#include <numeric>

#include "projsum/rational.hpp"

namespace projsum {

KGroup::KGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  for (auto k : moduli_)
    if (k < 1)
      throw std::invalid_argument("modulus " + std::to_string(k) +
                                  " is not a positive integer; only torsion groups are supported");
}

KGroup KGroup::parse(std::string_view spec) {
  std::vector<std::int64_t> moduli;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
  };
  skip_ws();
  if (i == spec.size()) return KGroup();
  while (true) {
    skip_ws();
    std::size_t start = i;
    if (i < spec.size() && spec[i] == '-') ++i;
    while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) ++i;
    if (i == start || (i == start + 1 && spec[start] == '-')) throw ParseError("expected modulus", start);
    std::int64_t k = 0;
    try {
      k = std::stoll(std::string(spec.substr(start, i - start)));
    } catch (const std::out_of_range&) {
      throw ParseError("modulus out of range", start);
    }
    if (k < 1)
      throw ParseError("modulus " + std::to_string(k) + " gives a non-torsion or invalid group", start);
    moduli.push_back(k);
    skip_ws();
    if (i == spec.size()) break;
    if (spec[i] != ',') throw ParseError("expected ',' in group spec", i);
    ++i;
  }
  return KGroup(std::move(moduli));
}

KGroup KGroup::cuntz(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("O_n requires n >= 2");
  return KGroup({n - 1});
}

std::int64_t KGroup::order() const {
  std::int64_t o = 1;
  for (auto k : moduli_) o *= k;
  return o;
}

KClass KGroup::zero() const { return KClass(moduli_, std::vector<std::int64_t>(moduli_.size(), 0)); }

KClass KGroup::element(std::span<const std::int64_t> residues) const {
  if (residues.size() != moduli_.size())
    throw GroupMismatch("class has " + std::to_string(residues.size()) + " components, group has " +
                        std::to_string(moduli_.size()));
  std::vector<std::int64_t> r(residues.begin(), residues.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ((r[i] % moduli_[i]) + moduli_[i]) % moduli_[i];
  return KClass(moduli_, std::move(r));
}

std::vector<KClass> KGroup::elements() const {
  std::vector<KClass> out;
  std::vector<std::int64_t> r(moduli_.size(), 0);
  while (true) {
    out.push_back(KClass(moduli_, r));
    std::size_t i = r.size();
    while (i > 0) {
      --i;
      if (++r[i] < moduli_[i]) break;
      r[i] = 0;
      if (i == 0) return out;
    }
    if (r.empty()) return out;
  }
}

std::string KGroup::to_string() const {
  if (moduli_.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(moduli_[i]);
  }
  return s;
}

bool KClass::is_zero() const {
  for (auto r : residues_)
    if (r != 0) return false;
  return true;
}

KClass KClass::operator-() const {
  std::vector<std::int64_t> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (moduli_[i] - residues_[i]) % moduli_[i];
  return KClass(moduli_, std::move(r));
}

KClass operator+(const KClass& a, const KClass& b) {
  if (a.moduli_ != b.moduli_) throw GroupMismatch("classes belong to different groups");
  std::vector<std::int64_t> r(a.residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.residues_[i] + b.residues_[i]) % a.moduli_[i];
  return KClass(a.moduli_, std::move(r));
}

KClass KClass::times(std::int64_t n) const {
  if (n < 0) return (-*this).times(-n);
  std::vector<std::int64_t> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    __int128 v = static_cast<__int128>(residues_[i]) * (n % moduli_[i]);
    r[i] = static_cast<std::int64_t>(v % moduli_[i]);
  }
  return KClass(moduli_, std::move(r));
}

std::string KClass::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(residues_[i]);
  }
  return s + ")";
}

std::int64_t class_order(const KClass& g) {
  std::int64_t order = 1;
  for (std::size_t i = 0; i < g.residues().size(); ++i) {
    const std::int64_t k = g.moduli()[i];
    const std::int64_t component = k / std::gcd(g.residues()[i], k);
    order = std::lcm(order, component);
  }
  return order;
}

bool split_legal(const KClass& parent, std::span<const KClass> children) {
  if (children.empty()) throw std::invalid_argument("split needs at least one child");
  KClass sum = children.front();
  for (std::size_t i = 1; i < children.size(); ++i) sum = sum + children[i];
  if (sum.moduli() != parent.moduli()) throw GroupMismatch("classes belong to different groups");
  return sum == parent;
}

}  // namespace projsum
