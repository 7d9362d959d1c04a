#pragma once

// Exact arithmetic in Q and in the rational function field Q(q).

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oreforge {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Univariate polynomial over Q in the formal parameter q. Coefficients are
/// stored by degree; the top coefficient is nonzero unless the polynomial is 0.
class QPolynomial {
 public:
  QPolynomial() = default;
  QPolynomial(long c);  // NOLINT(google-explicit-constructor)
  explicit QPolynomial(BigRational c);
  explicit QPolynomial(std::vector<BigRational> coefficients);

  static QPolynomial monomial(BigRational c, std::size_t degree);

  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const;
  /// True iff exactly one coefficient is nonzero.
  bool is_monomial() const;
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  /// Lowest degree with a nonzero coefficient (0 for the zero polynomial).
  std::size_t low_degree() const;
  std::size_t term_count() const;

  const BigRational& lead() const { return c_.back(); }
  BigRational coefficient(std::size_t k) const;
  const std::vector<BigRational>& coefficients() const noexcept { return c_; }

  QPolynomial monic() const;

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  QPolynomial& operator*=(const BigRational& c);

  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  QPolynomial operator-() const;

  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws MathError when `b` is zero.
  static std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a, const QPolynomial& b);
  /// Exact quotient; throws MathError if the division leaves a remainder.
  static QPolynomial exact_div(const QPolynomial& a, const QPolynomial& b);
  /// Monic gcd (zero when both inputs are zero).
  static QPolynomial gcd(const QPolynomial& a, const QPolynomial& b);

  /// Shifts degrees down by `k`; all coefficients below `k` must be zero.
  QPolynomial shifted_down(std::size_t k) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigRational> c_;
};

/// Element of Q(q) in canonical form num/den: gcd(num, den) = 1, den monic,
/// zero is 0/1.
class CoeffRat {
 public:
  CoeffRat() : den_(1) {}
  CoeffRat(long c);  // NOLINT(google-explicit-constructor)
  explicit CoeffRat(BigRational c);
  explicit CoeffRat(QPolynomial num);
  /// Canonicalizes; throws MathError when `den` is zero.
  CoeffRat(QPolynomial num, QPolynomial den);

  static CoeffRat q();
  /// q^k for any integer k.
  static CoeffRat q_power(long k);

  const QPolynomial& num() const noexcept { return num_; }
  const QPolynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  /// Sign of the leading numerator coefficient (0 for zero).
  int sign() const;

  CoeffRat& operator+=(const CoeffRat& o);
  CoeffRat& operator-=(const CoeffRat& o);
  CoeffRat& operator*=(const CoeffRat& o);
  CoeffRat& operator/=(const CoeffRat& o);

  friend CoeffRat operator+(CoeffRat a, const CoeffRat& b) { return a += b; }
  friend CoeffRat operator-(CoeffRat a, const CoeffRat& b) { return a -= b; }
  friend CoeffRat operator*(CoeffRat a, const CoeffRat& b) { return a *= b; }
  friend CoeffRat operator/(CoeffRat a, const CoeffRat& b) { return a /= b; }
  CoeffRat operator-() const;

  CoeffRat inverse() const;
  CoeffRat pow(long n) const;

  friend bool operator==(const CoeffRat& a, const CoeffRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Renders in the coefficient expression grammar; parse_coeff reads it back.
  std::string to_string() const;
  /// True when the printed form needs parentheses to be used as a factor.
  bool needs_parentheses() const;

 private:
  struct Canonical {};
  CoeffRat(QPolynomial num, QPolynomial den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  QPolynomial num_;
  QPolynomial den_;
};

enum class ArithOp { Add, Sub, Mul, Div };

CoeffRat coeff_arith(const CoeffRat& a, const CoeffRat& b, ArithOp op);
/// a^n; 0^n with n < 0 throws MathError.
CoeffRat coeff_pow(const CoeffRat& a, long n);
/// In Q(q) the roots of unity are exactly 1 and -1. Throws MathError on zero.
bool is_root_of_unity(const CoeffRat& a);
/// Parses the coefficient grammar (q, integers, + - * / ^, parentheses).
CoeffRat parse_coeff(std::string_view text);

/// If `a` equals s*q^k with s in {1,-1}, returns true and fills the outputs.
bool as_signed_q_power(const CoeffRat& a, int& sign, long& exponent);

}  // namespace oreforge
