#include "oreforge/coeff.hpp"

#include <algorithm>
#include <sstream>

#include "oreforge/errors.hpp"
#include "oreforge/expr.hpp"

namespace oreforge {

// ---------------------------------------------------------------------------
// QPolynomial

QPolynomial::QPolynomial(long c) {
  if (c != 0) c_.emplace_back(c);
}

QPolynomial::QPolynomial(BigRational c) {
  c.canonicalize();
  if (c != 0) c_.push_back(std::move(c));
}

QPolynomial::QPolynomial(std::vector<BigRational> coefficients) : c_(std::move(coefficients)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

QPolynomial QPolynomial::monomial(BigRational c, std::size_t degree) {
  QPolynomial p;
  c.canonicalize();
  if (c == 0) return p;
  p.c_.assign(degree + 1, BigRational(0));
  p.c_[degree] = std::move(c);
  return p;
}

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool QPolynomial::is_one() const { return c_.size() == 1 && c_[0] == 1; }

bool QPolynomial::is_monomial() const { return term_count() == 1; }

std::size_t QPolynomial::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(c_.begin(), c_.end(), [](const BigRational& x) { return x != 0; }));
}

std::size_t QPolynomial::low_degree() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return k;
  return 0;
}

BigRational QPolynomial::coefficient(std::size_t k) const {
  return k < c_.size() ? c_[k] : BigRational(0);
}

QPolynomial QPolynomial::monic() const {
  if (is_zero() || lead() == 1) return *this;
  QPolynomial p = *this;
  BigRational inv = 1 / lead();
  for (auto& x : p.c_) x *= inv;
  return p;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator*=(const BigRational& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  QPolynomial r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

std::pair<QPolynomial, QPolynomial> QPolynomial::divmod(const QPolynomial& a, const QPolynomial& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  QPolynomial quot;
  QPolynomial rem = a;
  if (rem.degree() < b.degree()) return {quot, rem};
  const int db = b.degree();
  quot.c_.assign(static_cast<std::size_t>(rem.degree() - db + 1), BigRational(0));
  const BigRational inv_lead = 1 / b.lead();
  while (!rem.is_zero() && rem.degree() >= db) {
    const auto shift = static_cast<std::size_t>(rem.degree() - db);
    BigRational factor = rem.lead() * inv_lead;
    for (std::size_t k = 0; k < b.c_.size(); ++k) rem.c_[k + shift] -= factor * b.c_[k];
    quot.c_[shift] = factor;
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

QPolynomial QPolynomial::exact_div(const QPolynomial& a, const QPolynomial& b) {
  auto [quot, rem] = divmod(a, b);
  if (!rem.is_zero()) throw MathError("inexact polynomial division");
  return quot;
}

QPolynomial QPolynomial::shifted_down(std::size_t k) const {
  QPolynomial p;
  if (k >= c_.size()) return p;
  p.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end());
  return p;
}

QPolynomial QPolynomial::gcd(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  // q^k against anything: the answer is a power of q.
  if (a.is_monomial() || b.is_monomial()) {
    std::size_t k = std::min(a.is_monomial() ? static_cast<std::size_t>(a.degree()) : a.low_degree(),
                             b.is_monomial() ? static_cast<std::size_t>(b.degree()) : b.low_degree());
    return monomial(BigRational(1), k);
  }
  if (a.is_constant() || b.is_constant()) return QPolynomial(1);
  QPolynomial x = a.monic();
  QPolynomial y = b.monic();
  while (!y.is_zero()) {
    QPolynomial r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

namespace {

std::string rational_string(const BigRational& r) { return r.get_str(); }

}  // namespace

std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const BigRational& c = c_[i];
    if (c == 0) continue;
    BigRational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << rational_string(mag);
      continue;
    }
    if (mag != 1) out << rational_string(mag) << "*";
    out << "q";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CoeffRat

CoeffRat::CoeffRat(long c) : num_(c), den_(1) {}

CoeffRat::CoeffRat(BigRational c) : num_(std::move(c)), den_(1) {}

CoeffRat::CoeffRat(QPolynomial num) : num_(std::move(num)), den_(1) {}

CoeffRat::CoeffRat(QPolynomial num, QPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MathError("division by zero");
  canonicalize();
}

CoeffRat CoeffRat::q() { return CoeffRat(QPolynomial::monomial(BigRational(1), 1)); }

CoeffRat CoeffRat::q_power(long k) {
  if (k >= 0) return CoeffRat(QPolynomial::monomial(BigRational(1), static_cast<std::size_t>(k)));
  return CoeffRat(QPolynomial(1), QPolynomial::monomial(BigRational(1), static_cast<std::size_t>(-k)),
                  Canonical{});
}

void CoeffRat::canonicalize() {
  if (num_.is_zero()) {
    den_ = QPolynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    QPolynomial g = QPolynomial::gcd(num_, den_);
    if (!g.is_one()) {
      if (g.is_monomial()) {
        num_ = num_.shifted_down(static_cast<std::size_t>(g.degree()));
        den_ = den_.shifted_down(static_cast<std::size_t>(g.degree()));
      } else {
        num_ = QPolynomial::exact_div(num_, g);
        den_ = QPolynomial::exact_div(den_, g);
      }
    }
  }
  if (den_.lead() != 1) {
    BigRational inv = 1 / den_.lead();
    num_ *= inv;
    den_ *= inv;
  }
}

int CoeffRat::sign() const {
  if (num_.is_zero()) return 0;
  return num_.lead() < 0 ? -1 : 1;
}

CoeffRat& CoeffRat::operator+=(const CoeffRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (num_.is_zero() || den_.is_one()) {
      if (num_.is_zero()) den_ = QPolynomial(1);
      return *this;
    }
    canonicalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

CoeffRat& CoeffRat::operator-=(const CoeffRat& o) { return *this += -o; }

CoeffRat& CoeffRat::operator*=(const CoeffRat& o) {
  if (is_zero() || o.is_zero()) return *this = CoeffRat();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // Cross-cancel before multiplying to keep intermediate degrees small.
  QPolynomial g1 = QPolynomial::gcd(num_, o.den_);
  QPolynomial g2 = QPolynomial::gcd(o.num_, den_);
  QPolynomial a = g1.is_one() ? num_ : QPolynomial::exact_div(num_, g1);
  QPolynomial d = g1.is_one() ? o.den_ : QPolynomial::exact_div(o.den_, g1);
  QPolynomial c = g2.is_one() ? o.num_ : QPolynomial::exact_div(o.num_, g2);
  QPolynomial b = g2.is_one() ? den_ : QPolynomial::exact_div(den_, g2);
  num_ = a * c;
  den_ = b * d;
  if (den_.lead() != 1) {
    BigRational inv = 1 / den_.lead();
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

CoeffRat& CoeffRat::operator/=(const CoeffRat& o) { return *this *= o.inverse(); }

CoeffRat CoeffRat::operator-() const { return CoeffRat(-num_, den_, Canonical{}); }

CoeffRat CoeffRat::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  CoeffRat r(den_, num_, Canonical{});
  if (r.den_.lead() != 1) {
    BigRational inv = 1 / r.den_.lead();
    r.num_ *= inv;
    r.den_ *= inv;
  }
  return r;
}

CoeffRat CoeffRat::pow(long n) const {
  if (n < 0) {
    if (is_zero()) throw MathError("zero raised to a negative power");
    return inverse().pow(-n);
  }
  CoeffRat result(1);
  CoeffRat base = *this;
  auto e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool CoeffRat::needs_parentheses() const {
  return den_.is_one() && num_.term_count() > 1;
}

std::string CoeffRat::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  std::string d = den_.to_string();
  if (num_.term_count() > 1) n = "(" + n + ")";
  if (den_.term_count() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

// ---------------------------------------------------------------------------

CoeffRat coeff_arith(const CoeffRat& a, const CoeffRat& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return a;
}

CoeffRat coeff_pow(const CoeffRat& a, long n) { return a.pow(n); }

bool is_root_of_unity(const CoeffRat& a) {
  if (a.is_zero()) throw MathError("zero is not a unit");
  if (!a.is_constant()) return false;
  const BigRational c = a.num().coefficient(0);
  return c == 1 || c == -1;
}

CoeffRat parse_coeff(std::string_view text) {
  return expr::evaluate_coeff(*expr::parse(text));
}

bool as_signed_q_power(const CoeffRat& a, int& sign, long& exponent) {
  if (a.is_zero() || !a.num().is_monomial() || !a.den().is_monomial()) return false;
  const BigRational& c = a.num().lead();
  if (c != 1 && c != -1) return false;
  sign = c > 0 ? 1 : -1;
  exponent = static_cast<long>(a.num().degree()) - static_cast<long>(a.den().degree());
  return true;
}

}  // namespace oreforge
