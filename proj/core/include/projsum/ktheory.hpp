#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace projsum {

class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class KClass;

/// Finite abelian group Z/k1 x ... x Z/kr. The empty list is the trivial group.
class KGroup {
 public:
  KGroup() = default;
  /// Throws std::invalid_argument for a modulus < 1 (0 would be a free summand).
  explicit KGroup(std::vector<std::int64_t> moduli);

  /// Comma-separated moduli: "2", "2,3", "1" or "" (trivial).
  static KGroup parse(std::string_view spec);
  /// K0 of the Cuntz algebra O_n, i.e. Z/(n-1).
  static KGroup cuntz(std::int64_t n);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::int64_t order() const;

  KClass zero() const;
  /// Reduces residues into range.
  KClass element(std::span<const std::int64_t> residues) const;
  /// Every element, in lexicographic residue order.
  std::vector<KClass> elements() const;

  std::string to_string() const;
  friend bool operator==(const KGroup&, const KGroup&) = default;

 private:
  std::vector<std::int64_t> moduli_;
};

/// Element of a KGroup: reduced residues, one per modulus.
class KClass {
 public:
  KClass() = default;

  const std::vector<std::int64_t>& residues() const { return residues_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  bool is_zero() const;

  KClass operator-() const;
  friend KClass operator+(const KClass& a, const KClass& b);
  friend KClass operator-(const KClass& a, const KClass& b) { return a + (-b); }
  /// n * g for n >= 0.
  KClass times(std::int64_t n) const;

  std::string to_string() const;
  friend bool operator==(const KClass&, const KClass&) = default;

 private:
  friend class KGroup;
  KClass(std::vector<std::int64_t> moduli, std::vector<std::int64_t> residues)
      : moduli_(std::move(moduli)), residues_(std::move(residues)) {}

  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> residues_;
};

inline KClass class_add(const KClass& g, const KClass& h) { return g + h; }
inline KClass class_neg(const KClass& g) { return -g; }
inline bool is_zero(const KClass& g) { return g.is_zero(); }

/// Smallest n >= 1 with n g = 0: lcm over components of k_i / gcd(g_i, k_i).
std::int64_t class_order(const KClass& g);

/// True iff the children sum to the parent.
bool split_legal(const KClass& parent, std::span<const KClass> children);

}  // namespace projsum
