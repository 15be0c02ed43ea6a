#pragma once

// Exact rational scalar. Values that fit in a pair of int64 words are kept
// inline; anything larger is promoted to a GMP rational. The representation
// is canonical: a value is stored inline iff numerator and denominator both
// fit in int64 (numerator != INT64_MIN), always in lowest terms with a
// positive denominator.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hamlie {

class Rational {
public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) : num_(static_cast<std::int64_t>(v)) {  // NOLINT(google-explicit-constructor)
    if (num_ == kMin) assign(mpq_class(mpz_class(std::to_string(num_))));
  }
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    q.canonicalize();
    assign(q);
  }
  explicit Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    assign(c);
  }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p", "-p" or "p/q". Decimal points and exponents are rejected.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto valid = [](const std::string& part, bool allow_sign) {
      if (part.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
      if (i == part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    std::string p = s.substr(0, slash);
    std::string q = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid(p, true) || !valid(q, false))
      throw std::invalid_argument("not an exact rational literal: '" + s + "'");
    if (p[0] == '+') p.erase(0, 1);
    mpz_class pz(p), qz(q);
    if (qz == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(mpq_class(pz, qz));
  }

  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  [[nodiscard]] mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num_);
    mpz_set_si(q.get_den_mpz_t(), den_);
    return q;
  }

  [[nodiscard]] std::string numerator_string() const {
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
  }
  [[nodiscard]] std::string denominator_string() const {
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
  }

  /// Lowest-terms "p/q", or "p" when q = 1.
  [[nodiscard]] std::string str() const {
    if (is_integer()) return numerator_string();
    return numerator_string() + "/" + denominator_string();
  }

  /// Integer value; throws if not an integer or out of int64 range.
  [[nodiscard]] std::int64_t to_int64() const {
    if (big_ || den_ != 1) throw std::domain_error("rational " + str() + " is not a machine integer");
    return num_;
  }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      if (a.den_ == 1 && b.den_ == 1) {
        if (!__builtin_add_overflow(a.num_, b.num_, &r.num_) && r.num_ != kMin) return r;
      } else if (add_small(a.num_, a.den_, b.num_, b.den_, r.num_, r.den_)) {
        return r;
      }
    }
    return Rational(a.to_mpq() + b.to_mpq());
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_ && b.num_ != kMin) {
      Rational r;
      if (a.den_ == 1 && b.den_ == 1) {
        if (!__builtin_sub_overflow(a.num_, b.num_, &r.num_) && r.num_ != kMin) return r;
      } else if (add_small(a.num_, a.den_, -b.num_, b.den_, r.num_, r.den_)) {
        return r;
      }
    }
    return Rational(a.to_mpq() - b.to_mpq());
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return {};
      const std::int64_t g1 = std::gcd(a.num_, b.den_);
      const std::int64_t g2 = std::gcd(b.num_, a.den_);
      Rational r;
      if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &r.num_) &&
          !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &r.den_) && r.num_ != kMin)
        return r;
    }
    return Rational(a.to_mpq() * b.to_mpq());
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return a * b.inverse();
  }

  [[nodiscard]] Rational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical form: a small and a big value never coincide
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 l = static_cast<__int128>(a.num_) * b.den_;
      const __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l < r;
    }
    return a.to_mpq() < b.to_mpq();
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

  // a/b + c/d in lowest terms (Knuth 4.5.1); false on overflow.
  static bool add_small(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                        std::int64_t& num, std::int64_t& den) {
    const std::int64_t g = std::gcd(b, d);
    std::int64_t t1 = 0, t2 = 0, t = 0;
    if (__builtin_mul_overflow(a, d / g, &t1) || __builtin_mul_overflow(c, b / g, &t2) ||
        __builtin_add_overflow(t1, t2, &t) || t == kMin)
      return false;
    if (t == 0) {
      num = 0;
      den = 1;
      return true;
    }
    const std::int64_t g2 = std::gcd(t, g);
    num = t / g2;
    return !__builtin_mul_overflow(b / g, d / g2, &den);
  }

  void assign(const mpq_class& q) {
    const bool fits = mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t()) &&
                      mpz_cmp_si(q.get_num_mpz_t(), kMin) != 0;
    if (fits) {
      num_ = mpz_get_si(q.get_num_mpz_t());
      den_ = mpz_get_si(q.get_den_mpz_t());
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_unique<mpq_class>(q);
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace hamlie
