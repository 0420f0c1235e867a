#include "stablci/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>

#include "stablci/error.hpp"

namespace stablci {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) return std::nullopt;
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      auto int_part = text.substr(0, dot);
      auto frac_part = text.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) return std::nullopt;
      if ((!int_part.empty() && !all_digits(int_part)) ||
          (!frac_part.empty() && !all_digits(frac_part))) {
        return std::nullopt;
      }
      digits = std::string(int_part) + std::string(frac_part);
      frac_len = static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(text)) return std::nullopt;
      digits = std::string(text);
    }
    Integer mantissa(digits, 10);
    long shift = exponent - frac_len;
    if (shift >= 0) {
      value = Rational(mantissa * pow10(static_cast<unsigned long>(shift)));
    } else {
      value = Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
      value.canonicalize();
    }
  }
  if (negative) value = -value;
  return value;
}

double to_double(const Rational& q) {
  mpfr_t tmp;
  mpfr_init2(tmp, 53);
  mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
  double out = mpfr_get_d(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return out;
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "cannot convert non-finite double");
  Rational q(v);  // exact for binary64
  return q;
}

Rational best_rational(const Rational& x, const Integer& max_den) {
  if (x.get_den() <= max_den) return x;
  // Continued-fraction convergents h_k/k_k, tracking the last two.
  Integer h_prev2 = 0, h_prev1 = 1, k_prev2 = 1, k_prev1 = 0;
  Integer num = x.get_num(), den = x.get_den();
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer h = a * h_prev1 + h_prev2;
    Integer k = a * k_prev1 + k_prev2;
    if (k > max_den) {
      // Best semiconvergent with denominator within bound.
      Integer t = (max_den - k_prev2) / k_prev1;
      Rational semi(t * h_prev1 + h_prev2, t * k_prev1 + k_prev2);
      semi.canonicalize();
      Rational conv(h_prev1, k_prev1);
      conv.canonicalize();
      return abs(semi - x) < abs(conv - x) ? semi : conv;
    }
    h_prev2 = h_prev1;
    h_prev1 = h;
    k_prev2 = k_prev1;
    k_prev1 = k;
    Integer r = num - a * den;
    num = den;
    den = r;
  }
  Rational out(h_prev1, k_prev1);
  out.canonicalize();
  return out;
}

Rational best_rational(double x, const Integer& max_den) {
  return best_rational(from_double(x), max_den);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRingMismatch: return "RING_MISMATCH";
    case ErrorCode::kArityMismatch: return "ARITY_MISMATCH";
    case ErrorCode::kNonSquare: return "NON_SQUARE";
    case ErrorCode::kNotExactDivision: return "NOT_EXACT_DIVISION";
    case ErrorCode::kGenericPositiveDim: return "GENERIC_POSITIVE_DIM";
    case ErrorCode::kNoSmooth: return "NO_SMOOTH";
    case ErrorCode::kNotZeroDim: return "NOT_ZERO_DIM";
    case ErrorCode::kShapeFailed: return "SHAPE_FAILED";
    case ErrorCode::kDegenerate: return "DEGENERATE";
    case ErrorCode::kOnBoundary: return "ON_BOUNDARY";
    case ErrorCode::kSingular: return "SINGULAR";
    case ErrorCode::kNoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::kInadmissible: return "INADMISSIBLE";
    case ErrorCode::kOriginRoot: return "ORIGIN_ROOT";
    case ErrorCode::kZeroGradient: return "ZERO_GRADIENT";
    case ErrorCode::kSingularTransform: return "SINGULAR_TRANSFORM";
    case ErrorCode::kNonFinite: return "NON_FINITE";
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kUndeclaredIdentifier: return "UNDECLARED_IDENTIFIER";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace stablci
