#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stablci/polycore.hpp"

namespace stablci {

/// Dense vector of finite doubles.
class FloatVector {
 public:
  FloatVector() = default;
  explicit FloatVector(std::size_t n, double fill = 0.0);
  /// Throws kNonFinite on NaN or infinity.
  FloatVector(std::initializer_list<double> values);
  explicit FloatVector(std::vector<double> values);

  std::size_t size() const { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }
  const std::vector<double>& values() const { return data_; }

  friend FloatVector operator+(const FloatVector& a, const FloatVector& b);
  friend FloatVector operator-(const FloatVector& a, const FloatVector& b);
  friend FloatVector operator*(double s, const FloatVector& v);

 private:
  std::vector<double> data_;
};

/// Dense row-major matrix of finite doubles.
class FloatMatrix {
 public:
  FloatMatrix() = default;
  FloatMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Row lists; throws kNonFinite on NaN or infinity, kInvalidArgument on ragged rows.
  FloatMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static FloatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  FloatMatrix transpose() const;
  FloatVector row(std::size_t r) const;
  /// Throws kNonFinite if an entry is NaN or infinite.
  void check_finite() const;

  friend FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b);
  friend FloatVector operator*(const FloatMatrix& a, const FloatVector& v);
  friend FloatMatrix operator+(const FloatMatrix& a, const FloatMatrix& b);
  friend FloatMatrix operator-(const FloatMatrix& a, const FloatMatrix& b);
  friend FloatMatrix operator*(double s, const FloatMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Norm selector for induced matrix norms and vector norms.
enum class Norm { kOne, kTwo, kInf };

const char* norm_name(Norm n);

FloatVector to_float_vector(std::span<const Rational> v);

/// Values of the system at p, coefficients rounded to nearest double.
FloatVector eval_system(std::span<const ExactPoly> system, const FloatVector& p);
FloatMatrix eval_jacobian(std::span<const ExactPoly> system, const FloatVector& p);
/// Evaluates a precomputed symbolic Jacobian.
FloatMatrix eval_matrix(const PolyMatrix& m, const FloatVector& p);

double vector_norm(const FloatVector& v, Norm r);
/// General r-norm for real r >= 1.
double vector_norm(const FloatVector& v, double r);
double matrix_norm(const FloatMatrix& m, Norm r);

struct Svd {
  FloatMatrix u;  // rows x k
  FloatVector sigma;  // non-increasing, non-negative
  FloatMatrix v;  // cols x k
};

/// One-sided Jacobi SVD, M = U diag(sigma) V^t.
Svd svd(const FloatMatrix& m);

/// Partial-pivot Gaussian elimination; SINGULAR if a pivot falls below
/// 1e-12 * ||M||_inf.
FloatMatrix matrix_inverse(const FloatMatrix& m);
FloatVector lu_solve(const FloatMatrix& a, const FloatVector& b);

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
};

/// Newton iteration on a square system until ||system(x)||_2 <= tol.
/// Throws kNoConvergence or kSingular.
FloatVector newton_refine(std::span<const ExactPoly> system, const FloatVector& start,
                          const NewtonOptions& options = {});

}  // namespace stablci
