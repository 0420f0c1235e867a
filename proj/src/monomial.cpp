#include "stablci/monomial.hpp"

#include <algorithm>
#include <limits>

#include "stablci/error.hpp"

namespace stablci {

namespace {

int degrevlex_range(const Monomial& a, const Monomial& b, int begin, int end) {
  int da = a.block_degree(begin, end);
  int db = b.block_degree(begin, end);
  if (da != db) return da > db ? 1 : -1;
  for (int i = end - 1; i >= begin; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

Monomial::Monomial(std::span<const int> exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxVars)) {
    throw Error(ErrorCode::kInvalidArgument, "too many variables in monomial");
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::kInvalidArgument, "exponent out of range");
    }
    exps_[i] = static_cast<std::uint16_t>(exponents[i]);
  }
  refresh();
}

Monomial Monomial::variable(int index, int power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(int i, int e) {
  if (i < 0 || i >= kMaxVars || e < 0 || e > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "monomial index or exponent out of range");
  }
  exps_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
  refresh();
}

void Monomial::refresh() {
  degree_ = 0;
  support_ = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    degree_ += exps_[static_cast<std::size_t>(i)];
    if (exps_[static_cast<std::size_t>(i)] != 0) support_ |= (1u << i);
  }
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] + other.exps_[i]);
  }
  r.degree_ = degree_ + other.degree_;
  r.support_ = support_ | other.support_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - other.exps_[i]);
  }
  r.refresh();
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if ((support_ & ~other.support_) != 0 || degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  r.refresh();
  return r;
}

int Monomial::block_degree(int begin, int end) const {
  int d = 0;
  for (int i = begin; i < end; ++i) d += exps_[static_cast<std::size_t>(i)];
  return d;
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> out(static_cast<std::size_t>(nvars));
  for (int i = 0; i < nvars; ++i) out[static_cast<std::size_t>(i)] = exps_[static_cast<std::size_t>(i)];
  return out;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::kLex:
      for (int i = 0; i < kMaxVars; ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    case Kind::kDegRevLex:
      return degrevlex_range(a, b, 0, kMaxVars);
    case Kind::kBlockElim: {
      int c = degrevlex_range(a, b, 0, block_);
      if (c != 0) return c;
      return degrevlex_range(a, b, block_, kMaxVars);
    }
  }
  return 0;
}

}  // namespace stablci
