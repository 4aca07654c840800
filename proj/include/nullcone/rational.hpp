#ifndef NULLCONE_RATIONAL_HPP
#define NULLCONE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nullcone {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to an arbitrary-precision representation and
/// demoted again as soon as it fits. All arithmetic is exact.
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;
  using BigInt = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : num_(n) {}           // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { assign(static_cast<__int128>(n), static_cast<__int128>(d)); }

  explicit Rational(const Big& b) { assign_big(b); }

  /// Parses "p", "-p" or "p/q" (decimal integers, arbitrary length).
  static Rational parse(std::string_view s) {
    auto trim = [](std::string_view v) {
      while (!v.empty() && (v.front() == ' ' || v.front() == '+')) v.remove_prefix(1);
      while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
      return v;
    };
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    auto check_digits = [](std::string_view v) {
      std::size_t i = (!v.empty() && v.front() == '-') ? 1 : 0;
      if (i == v.size()) return false;
      for (; i < v.size(); ++i)
        if (v[i] < '0' || v[i] > '9') return false;
      return true;
    };
    std::string_view ns = trim(s.substr(0, slash));
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!check_digits(ns) || !check_digits(ds))
      throw std::invalid_argument("malformed rational literal '" + std::string(s) + "'");
    BigInt n{std::string(ns)};
    BigInt d{std::string(ds)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(Big(n, d));
  }

  bool is_big() const { return static_cast<bool>(big_); }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? denominator(*big_) == 1 : den_ == 1; }
  int sign() const {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
  }

  /// Numerator and denominator, when stored inline.
  std::optional<std::pair<std::int64_t, std::int64_t>> inline_parts() const {
    if (big_) return std::nullopt;
    return std::pair{num_, den_};
  }

  Big to_big() const { return big_ ? *big_ : Big(BigInt(num_), BigInt(den_)); }

  BigInt numerator_big() const { return big_ ? numerator(*big_) : BigInt(num_); }
  BigInt denominator_big() const { return big_ ? denominator(*big_) : BigInt(den_); }

  /// Integer value; throws if not an integer or out of 64-bit range.
  std::int64_t to_int64() const {
    if (!is_integer()) throw std::domain_error("rational " + str() + " is not an integer");
    if (big_) {
      BigInt n = numerator(*big_);
      if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer " + str() + " exceeds 64 bits");
      return static_cast<std::int64_t>(n);
    }
    return num_;
  }

  double to_double() const {
    if (big_) return static_cast<double>(*big_);
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    if (big_) {
      BigInt n = numerator(*big_), d = denominator(*big_);
      return d == 1 ? n.str() : n.str() + "/" + d.str();
    }
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return Rational(Big(-to_big()));
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (!big_) {
      Rational r;
      r.assign(static_cast<__int128>(den_), static_cast<__int128>(num_));
      return r;
    }
    return Rational(Big(1) / *big_);
  }

  /// Integer power (negative exponents allowed for nonzero values).
  Rational pow(std::int64_t e) const {
    if (e < 0) return reciprocal().pow(-e);
    Rational result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      Rational r;
      r.assign(n, d);
      return r;
    }
    return Rational(Big(a.to_big() + b.to_big()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t p;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
      }
      Rational r;
      r.assign(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
      return r;
    }
    return Rational(Big(a.to_big() * b.to_big()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    // Canonical form: a value representable inline is never stored big.
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    Big l = a.to_big(), r = b.to_big();
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(str());
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("division by zero");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    if (n >= lo && n <= hi && d <= hi) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
      return;
    }
    BigInt bn = 0, bd = 0;
    bool neg = n < 0;
    unsigned __int128 un = neg ? static_cast<unsigned __int128>(-(n + 1)) + 1 : static_cast<unsigned __int128>(n);
    bn = BigInt(static_cast<std::uint64_t>(un >> 64));
    bn <<= 64;
    bn += BigInt(static_cast<std::uint64_t>(un));
    if (neg) bn = -bn;
    unsigned __int128 ud = static_cast<unsigned __int128>(d);
    bd = BigInt(static_cast<std::uint64_t>(ud >> 64));
    bd <<= 64;
    bd += BigInt(static_cast<std::uint64_t>(ud));
    assign_big(Big(bn, bd));
  }

  void assign_big(const Big& b) {
    const BigInt& n = numerator(b);
    const BigInt& d = denominator(b);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max() &&
        d <= std::numeric_limits<std::int64_t>::max()) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_shared<const Big>(b);
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace nullcone

template <>
struct std::hash<nullcone::Rational> {
  std::size_t operator()(const nullcone::Rational& r) const noexcept { return r.hash(); }
};

#endif  // NULLCONE_RATIONAL_HPP
