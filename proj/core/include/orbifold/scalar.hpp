#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <atomic>
#include <complex>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace orbifold {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Elements of a real quadratic extension Q(sqrt(d)), d square-free positive.
// d == 0 marks a pure rational; mixed arithmetic adopts the other operand's d.
struct Quad {
  Rat a;
  Rat b;
  long long d = 0;

  Quad() = default;
  Quad(Rat a_) : a(std::move(a_)) {}
  Quad(long long n) : a(n) {}
  Quad(Rat a_, Rat b_, long long d_) : a(std::move(a_)), b(std::move(b_)), d(d_) {
    if (b == 0) d = 0;
  }

  static long long join(long long x, long long y) {
    if (x == 0) return y;
    if (y == 0) return x;
    if (x != y) throw std::invalid_argument("Quad: mixing sqrt(" + std::to_string(x) + ") with sqrt(" + std::to_string(y) + ")");
    return x;
  }

  friend Quad operator+(const Quad& x, const Quad& y) {
    return Quad(x.a + y.a, x.b + y.b, join(x.d, y.d));
  }
  friend Quad operator-(const Quad& x, const Quad& y) {
    return Quad(x.a - y.a, x.b - y.b, join(x.d, y.d));
  }
  Quad operator-() const { return Quad(-a, -b, d); }
  friend Quad operator*(const Quad& x, const Quad& y) {
    long long dd = join(x.d, y.d);
    return Quad(x.a * y.a + Rat(dd) * x.b * y.b, x.a * y.b + x.b * y.a, dd);
  }
  friend Quad operator/(const Quad& x, const Quad& y) {
    long long dd = join(x.d, y.d);
    Rat n = y.a * y.a - Rat(dd) * y.b * y.b;
    if (n == 0) throw std::domain_error("Quad: division by zero");
    return x * Quad(y.a / n, -y.b / n, dd);
  }
  Quad& operator+=(const Quad& y) { return *this = *this + y; }
  Quad& operator-=(const Quad& y) { return *this = *this - y; }
  Quad& operator*=(const Quad& y) { return *this = *this * y; }
  Quad& operator/=(const Quad& y) { return *this = *this / y; }
  friend bool operator==(const Quad& x, const Quad& y) {
    if (x.b != 0 && y.b != 0) join(x.d, y.d);
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }
};

using C64 = std::complex<double>;

// Relative tolerance for C64 comparisons; per-session, see SessionConfig.
inline std::atomic<double>& c64_epsilon() {
  static std::atomic<double> eps{1e-9};
  return eps;
}

namespace detail {
inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}
}  // namespace detail

// FieldTraits<T>: the scalar interface every module contracts against.
// eq() is exact for Rat/Quad and epsilon-relative for C64.
template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_int(long long n) { return Rat(n); }
  static bool eq(const Rat& x, const Rat& y) { return x == y; }
  static bool is_zero(const Rat& x) { return x == 0; }
  static Rat inv(const Rat& x) {
    if (x == 0) throw std::domain_error("division by zero");
    return Rat(1) / x;
  }
  static std::optional<Rat> sqrt_exact(const Rat& x) {
    if (x < 0) return std::nullopt;
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    Int sn = boost::multiprecision::sqrt(num);
    Int sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn, sd);
  }
  static std::string str(const Rat& x) { return detail::rat_str(x); }
  static double approx(const Rat& x) { return static_cast<double>(x); }
};

template <>
struct FieldTraits<Quad> {
  static constexpr bool exact = true;
  static Quad zero() { return Quad(); }
  static Quad one() { return Quad(1); }
  static Quad from_int(long long n) { return Quad(n); }
  static bool eq(const Quad& x, const Quad& y) { return x == y; }
  static bool is_zero(const Quad& x) { return x.a == 0 && x.b == 0; }
  static Quad inv(const Quad& x) {
    if (is_zero(x)) throw std::domain_error("division by zero");
    return one() / x;
  }
  static std::optional<Quad> sqrt_exact(const Quad& x) {
    if (x.b != 0) return std::nullopt;  // only rational radicands needed
    auto r = FieldTraits<Rat>::sqrt_exact(x.a);
    if (r) return Quad(*r);
    return std::nullopt;
  }
  static std::string str(const Quad& x) {
    if (x.b == 0) return detail::rat_str(x.a);
    return detail::rat_str(x.a) + "+" + detail::rat_str(x.b) + "*sqrt(" + std::to_string(x.d) + ")";
  }
  static double approx(const Quad& x) {
    return static_cast<double>(x.a) + static_cast<double>(x.b) * std::sqrt(static_cast<double>(x.d));
  }
};

template <>
struct FieldTraits<C64> {
  static constexpr bool exact = false;
  static C64 zero() { return {0.0, 0.0}; }
  static C64 one() { return {1.0, 0.0}; }
  static C64 from_int(long long n) { return {static_cast<double>(n), 0.0}; }
  static bool eq(const C64& x, const C64& y) {
    double eps = c64_epsilon().load();
    double scale = std::max({std::abs(x), std::abs(y), 1.0});
    return std::abs(x - y) <= eps * scale;
  }
  static bool is_zero(const C64& x) { return eq(x, zero()); }
  static C64 inv(const C64& x) {
    if (std::abs(x) == 0.0) throw std::domain_error("division by zero");
    return 1.0 / x;
  }
  static std::optional<C64> sqrt_exact(const C64& x) { return std::sqrt(x); }
  static std::string str(const C64& x) {
    std::ostringstream os;
    os << "[" << x.real() << "," << x.imag() << "]";
    return os.str();
  }
  static double approx(const C64& x) { return x.real(); }
};

// Parsing of the wire formats "p/q", "a+b*sqrt(d)" (also "a-b*sqrt(d)").
Rat parse_rational(const std::string& s);
Quad parse_quad(const std::string& s);

template <class T>
T scalar_pow(const T& base, long long e) {
  using F = FieldTraits<T>;
  T b = base;
  long long n = e;
  if (n < 0) {
    b = F::inv(b);
    n = -n;
  }
  T r = F::one();
  while (n > 0) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

}  // namespace orbifold
