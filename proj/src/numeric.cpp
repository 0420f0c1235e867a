#include "stablci/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stablci/error.hpp"

namespace stablci {

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite floating-point value");
}

/// Polynomial with double coefficients over the unknowns only.
struct FloatPoly {
  std::vector<double> coeffs;
  std::vector<std::vector<int>> exps;
  int max_exp = 0;
};

FloatPoly compile(const ExactPoly& p) {
  if (p.has_params()) throw Error(ErrorCode::kArityMismatch, "polynomial still depends on parameters");
  const Ring& ring = *p.ring();
  FloatPoly out;
  for (const auto& t : p.raw().terms()) {
    out.coeffs.push_back(to_double(t.coeff));
    std::vector<int> e(static_cast<std::size_t>(ring.num_unknowns()));
    for (int i = 0; i < ring.num_unknowns(); ++i) {
      e[static_cast<std::size_t>(i)] = t.mono[ring.unknown_var(i)];
      out.max_exp = std::max(out.max_exp, e[static_cast<std::size_t>(i)]);
    }
    out.exps.push_back(std::move(e));
  }
  return out;
}

double eval_compiled(const FloatPoly& f, const FloatVector& p) {
  // Power table per coordinate, then one product per term.
  const std::size_t n = p.size();
  std::vector<std::vector<double>> powers(n, std::vector<double>(static_cast<std::size_t>(f.max_exp) + 1, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 1; k <= f.max_exp; ++k) powers[i][static_cast<std::size_t>(k)] = powers[i][static_cast<std::size_t>(k - 1)] * p[i];
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < f.coeffs.size(); ++t) {
    double term = f.coeffs[t];
    for (std::size_t i = 0; i < n; ++i) term *= powers[i][static_cast<std::size_t>(f.exps[t][i])];
    sum += term;
  }
  return sum;
}

void require_arity(std::span<const ExactPoly> system, const FloatVector& p) {
  for (const auto& f : system) {
    if (static_cast<std::size_t>(f.ring()->num_unknowns()) != p.size()) {
      throw Error(ErrorCode::kArityMismatch, "point has " + std::to_string(p.size()) + " coordinates, system has " +
                                                 std::to_string(f.ring()->num_unknowns()) + " unknowns");
    }
  }
}

}  // namespace

FloatVector::FloatVector(std::size_t n, double fill) : data_(n, fill) { require_finite(fill); }

FloatVector::FloatVector(std::initializer_list<double> values) : data_(values) {
  for (double v : data_) require_finite(v);
}

FloatVector::FloatVector(std::vector<double> values) : data_(std::move(values)) {
  for (double v : data_) require_finite(v);
}

FloatVector operator+(const FloatVector& a, const FloatVector& b) {
  FloatVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

FloatVector operator-(const FloatVector& a, const FloatVector& b) {
  FloatVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

FloatVector operator*(double s, const FloatVector& v) {
  FloatVector r = v;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= s;
  return r;
}

FloatMatrix::FloatMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require_finite(fill);
}

FloatMatrix::FloatMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::kInvalidArgument, "ragged matrix rows");
    for (double v : r) {
      require_finite(v);
      data_.push_back(v);
    }
  }
}

FloatMatrix FloatMatrix::identity(std::size_t n) {
  FloatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

FloatMatrix FloatMatrix::transpose() const {
  FloatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

FloatVector FloatMatrix::row(std::size_t r) const {
  return FloatVector(std::vector<double>(data_.begin() + static_cast<long>(r * cols_),
                                         data_.begin() + static_cast<long>((r + 1) * cols_)));
}

void FloatMatrix::check_finite() const {
  for (double v : data_) require_finite(v);
}

FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kArityMismatch, "matrix product shape mismatch");
  FloatMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

FloatVector operator*(const FloatMatrix& a, const FloatVector& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::kArityMismatch, "matrix-vector shape mismatch");
  FloatVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

FloatMatrix operator+(const FloatMatrix& a, const FloatMatrix& b) {
  FloatMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
  }
  return r;
}

FloatMatrix operator-(const FloatMatrix& a, const FloatMatrix& b) {
  FloatMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
  }
  return r;
}

FloatMatrix operator*(double s, const FloatMatrix& m) {
  FloatMatrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) *= s;
  }
  return r;
}

const char* norm_name(Norm n) {
  switch (n) {
    case Norm::kOne: return "1";
    case Norm::kTwo: return "2";
    case Norm::kInf: return "inf";
  }
  return "?";
}

FloatVector to_float_vector(std::span<const Rational> v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_double(q));
  return FloatVector(std::move(out));
}

FloatVector eval_system(std::span<const ExactPoly> system, const FloatVector& p) {
  require_arity(system, p);
  std::vector<double> out;
  out.reserve(system.size());
  for (const auto& f : system) out.push_back(eval_compiled(compile(f), p));
  return FloatVector(std::move(out));
}

FloatMatrix eval_matrix(const PolyMatrix& m, const FloatVector& p) {
  FloatMatrix out(m.size(), m.empty() ? 0 : m.front().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = eval_compiled(compile(m[i][j]), p);
  }
  out.check_finite();
  return out;
}

FloatMatrix eval_jacobian(std::span<const ExactPoly> system, const FloatVector& p) {
  require_arity(system, p);
  return eval_matrix(jacobian_symbolic(system), p);
}

double vector_norm(const FloatVector& v, Norm r) {
  switch (r) {
    case Norm::kOne: {
      double s = 0.0;
      for (double x : v.values()) s += std::abs(x);
      return s;
    }
    case Norm::kTwo: {
      // Scaled sum of squares guards against overflow.
      double scale = 0.0;
      for (double x : v.values()) scale = std::max(scale, std::abs(x));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double x : v.values()) s += (x / scale) * (x / scale);
      return scale * std::sqrt(s);
    }
    case Norm::kInf: {
      double m = 0.0;
      for (double x : v.values()) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

double vector_norm(const FloatVector& v, double r) {
  if (!(r >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "vector r-norm needs r >= 1");
  if (std::isinf(r)) return vector_norm(v, Norm::kInf);
  if (r == 1.0) return vector_norm(v, Norm::kOne);
  if (r == 2.0) return vector_norm(v, Norm::kTwo);
  const double scale = vector_norm(v, Norm::kInf);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v.values()) s += std::pow(std::abs(x) / scale, r);
  return scale * std::pow(s, 1.0 / r);
}

double matrix_norm(const FloatMatrix& m, Norm r) {
  switch (r) {
    case Norm::kOne: {
      double best = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case Norm::kInf: {
      double best = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case Norm::kTwo: {
      if (m.rows() == 0 || m.cols() == 0) return 0.0;
      return svd(m).sigma[0];
    }
  }
  return 0.0;
}

Svd svd(const FloatMatrix& m) {
  // One-sided Jacobi on the columns of A (or of A^t when A is wide).
  const bool wide = m.cols() > m.rows();
  FloatMatrix a = wide ? m.transpose() : m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  FloatMatrix v = FloatMatrix::identity(cols);
  constexpr double kTol = 1e-15;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double x = a(i, p), y = a(i, q);
          a(i, p) = c * x - s * y;
          a(i, q) = s * x + c * y;
        }
        for (std::size_t i = 0; i < cols; ++i) {
          const double x = v(i, p), y = v(i, q);
          v(i, p) = c * x - s * y;
          v(i, q) = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sigma(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> idx(cols);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
  Svd out{FloatMatrix(rows, cols), FloatVector(cols), FloatMatrix(cols, cols)};
  for (std::size_t k = 0; k < cols; ++k) {
    const std::size_t j = idx[k];
    out.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = sigma[j] > 0.0 ? a(i, j) / sigma[j] : 0.0;
    for (std::size_t i = 0; i < cols; ++i) out.v(i, k) = v(i, j);
  }
  if (wide) std::swap(out.u, out.v);
  return out;
}

namespace {

/// In-place LU with partial pivoting; returns the permutation.
std::vector<std::size_t> lu_factor(FloatMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::kNonSquare, "matrix is not square");
  const double threshold = 1e-12 * matrix_norm(a, Norm::kInf);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (!(std::abs(a(piv, k)) >= threshold) || a(piv, k) == 0.0) {
      throw Error(ErrorCode::kSingular, "matrix is numerically singular");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return perm;
}

FloatVector lu_apply(const FloatMatrix& lu, const std::vector<std::size_t>& perm, const FloatVector& b) {
  const std::size_t n = lu.rows();
  FloatVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
    x[i] = s / lu(i, i);
  }
  return x;
}

}  // namespace

FloatMatrix matrix_inverse(const FloatMatrix& m) {
  FloatMatrix lu = m;
  auto perm = lu_factor(lu);
  const std::size_t n = m.rows();
  FloatMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    FloatVector e(n);
    e[c] = 1.0;
    FloatVector col = lu_apply(lu, perm, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  inv.check_finite();
  return inv;
}

FloatVector lu_solve(const FloatMatrix& a, const FloatVector& b) {
  if (a.rows() != b.size()) throw Error(ErrorCode::kArityMismatch, "right-hand side has wrong length");
  FloatMatrix lu = a;
  auto perm = lu_factor(lu);
  FloatVector x = lu_apply(lu, perm, b);
  for (double v : x.values()) require_finite(v);
  return x;
}

FloatVector newton_refine(std::span<const ExactPoly> system, const FloatVector& start, const NewtonOptions& options) {
  require_arity(system, start);
  std::vector<FloatPoly> fs;
  for (const auto& f : system) fs.push_back(compile(f));
  const PolyMatrix jac_sym = jacobian_symbolic(system);
  std::vector<std::vector<FloatPoly>> jac;
  for (const auto& row : jac_sym) {
    std::vector<FloatPoly> r;
    for (const auto& e : row) r.push_back(compile(e));
    jac.push_back(std::move(r));
  }
  const std::size_t n = start.size();
  auto residual = [&](const FloatVector& x) {
    FloatVector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = eval_compiled(fs[i], x);
    return r;
  };
  FloatVector x = start;
  FloatVector r = residual(x);
  for (int it = 0; it < options.max_iter; ++it) {
    if (vector_norm(r, Norm::kTwo) <= options.tol) return x;
    FloatMatrix j(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) j(a, b) = eval_compiled(jac[a][b], x);
    }
    x = x - lu_solve(j, r);
    for (double v : x.values()) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kNoConvergence, "Newton iterate diverged");
    }
    r = residual(x);
  }
  if (vector_norm(r, Norm::kTwo) <= options.tol) return x;
  throw Error(ErrorCode::kNoConvergence, "Newton did not reach tolerance in " + std::to_string(options.max_iter) +
                                             " iterations");
}

}  // namespace stablci
