#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stablci {

/// Upper bound on the number of variables (parameters plus unknowns) of any
/// ring handled by the library.
inline constexpr int kMaxVars = 16;

/// Power product stored as a dense exponent vector. Slots beyond the ring's
/// variable count are always zero, so monomials of different rings that
/// agree on their common prefix compare consistently.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const int> exponents);

  static Monomial variable(int index, int power = 1);

  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  void set(int i, int e);
  int degree() const { return static_cast<int>(degree_); }
  bool is_one() const { return degree_ == 0; }
  /// Bit i set iff exponent i is positive.
  std::uint32_t support() const { return support_; }

  Monomial operator*(const Monomial& other) const;
  /// this / other; requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const { return (support_ & other.support_) == 0; }

  /// Sum of exponents over variables [begin, end).
  int block_degree(int begin, int end) const;

  std::vector<int> exponents(int nvars) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const;

 private:
  void refresh();

  std::array<std::uint16_t, kMaxVars> exps_{};
  std::uint32_t degree_ = 0;
  std::uint32_t support_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Multiplicative total orderings on power products. Variable 0 is the
/// largest variable in every order.
class TermOrder {
 public:
  enum class Kind { kLex, kDegRevLex, kBlockElim };

  static TermOrder lex() { return TermOrder(Kind::kLex, 0); }
  static TermOrder degrevlex() { return TermOrder(Kind::kDegRevLex, 0); }
  /// Block order: variables [0, k) form the first block and dominate;
  /// DegRevLex is used inside each block.
  static TermOrder block_elim(int k) { return TermOrder(Kind::kBlockElim, k); }

  Kind kind() const { return kind_; }
  int block_size() const { return block_; }

  /// Returns >0 if a > b, <0 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const TermOrder& a, const TermOrder& b) {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  TermOrder(Kind k, int block) : kind_(k), block_(block) {}

  Kind kind_;
  int block_;
};

}  // namespace stablci
