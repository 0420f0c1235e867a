#include "stablci/rescale.hpp"

#include <cmath>
#include <limits>

#include "stablci/conditioning.hpp"
#include "stablci/error.hpp"

namespace stablci {

namespace {

Rational exact_determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

// Lower-triangular L with M = L Lᵗ; throws kSingular unless M is positive definite.
FloatMatrix cholesky(const FloatMatrix& m) {
  const std::size_t n = m.rows();
  FloatMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw Error(ErrorCode::kSingular, "Jacobian is singular at the point");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

FloatMatrix lower_inverse(const FloatMatrix& l) {
  const std::size_t n = l.rows();
  FloatMatrix inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = col; i < n; ++i) {
      double s = i == col ? 1.0 : 0.0;
      for (std::size_t k = col; k < i; ++k) s -= l(i, k) * inv(k, col);
      inv(i, col) = s / l(i, i);
    }
  }
  return inv;
}

std::optional<Norm> norm_tag(double r) {
  if (r == 1.0) return Norm::kOne;
  if (r == 2.0) return Norm::kTwo;
  if (std::isinf(r)) return Norm::kInf;
  return std::nullopt;
}

}  // namespace

FloatVector row_norms_at(std::span<const ExactPoly> f, const FloatVector& p, double r) {
  FloatMatrix j = eval_jacobian(f, p);
  FloatVector out(j.rows());
  for (std::size_t i = 0; i < j.rows(); ++i) out[i] = vector_norm(j.row(i), r);
  return out;
}

RationalMatrix rationalize(const FloatMatrix& m, double max_den) {
  const Integer bound(max_den);
  RationalMatrix out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) out[i][k] = best_rational(m(i, k), bound);
  }
  return out;
}

PolySystem apply_transform(std::span<const ExactPoly> f, const RationalMatrix& c) {
  const std::size_t n = f.size();
  if (c.size() != n) throw Error(ErrorCode::kArityMismatch, "transform size does not match the system");
  for (const auto& row : c) {
    if (row.size() != n) throw Error(ErrorCode::kArityMismatch, "transform is not square");
  }
  if (exact_determinant(c) == 0) throw Error(ErrorCode::kSingularTransform, "transform matrix is singular");
  PolySystem out;
  for (std::size_t i = 0; i < n; ++i) {
    ExactPoly acc(f[0].ring());
    for (std::size_t k = 0; k < n; ++k) {
      if (c[i][k] != 0) acc = acc + c[i][k] * f[k];
    }
    out.push_back(acc);
  }
  return out;
}

RescaledSystem unitary_rescale(std::span<const ExactPoly> f, const FloatVector& p, double r2) {
  if (!(r2 >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "norm exponent must be at least 1");
  FloatVector norms = row_norms_at(f, p, r2);
  const std::size_t n = f.size();
  RationalMatrix gamma(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (norms[i] == 0.0) {
      throw Error(ErrorCode::kZeroGradient, "gradient of equation " + std::to_string(i + 1) + " vanishes at the point");
    }
    gamma[i][i] = best_rational(1.0 / norms[i], Integer(1e12));
  }
  RescaledSystem out;
  out.gens = apply_transform(f, gamma);
  out.transform = std::move(gamma);
  out.diagonal = true;
  const double r1 = r2 == 1.0 ? std::numeric_limits<double>::infinity() : (std::isinf(r2) ? 1.0 : r2 / (r2 - 1.0));
  out.certificate_norm = norm_tag(r1).value_or(Norm::kTwo);
  out.kappa = local_condition_number(out.gens, p, out.certificate_norm);
  return out;
}

Orthonormalizer orthonormalizing_matrix(std::span<const ExactPoly> f, const FloatVector& p) {
  FloatMatrix j = eval_jacobian(f, p);
  matrix_inverse(j);  // raises kSingular
  Orthonormalizer out{lower_inverse(cholesky(j * j.transpose())), true};
  for (const auto& g : f) out.equal_degrees = out.equal_degrees && g.total_degree() == f[0].total_degree();
  return out;
}

RescaledSystem orthonormal_rescale(std::span<const ExactPoly> f, const FloatVector& p) {
  Orthonormalizer o = orthonormalizing_matrix(f, p);
  RescaledSystem out;
  out.transform = rationalize(o.c);
  out.gens = apply_transform(f, out.transform);
  out.certificate_norm = Norm::kTwo;
  out.kappa = local_condition_number(out.gens, p, Norm::kTwo);
  if (!o.equal_degrees) out.warnings.push_back("equations have different degrees");
  if (out.kappa > 1.0 + 1e-6) out.warnings.push_back("rationalized transform gives kappa_2 = " + std::to_string(out.kappa));
  return out;
}

}  // namespace stablci
