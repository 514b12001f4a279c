#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fy {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Dual-mode number: an exact arbitrary-precision rational or an IEEE double.
///
/// Exact values are always held in lowest terms with a positive denominator
/// (the backing cpp_rational canonicalizes after every operation). Arithmetic
/// between two exact scalars stays exact; mixing an exact scalar with a float
/// scalar coerces the result to float and bumps a process-wide coercion
/// counter that callers may snapshot around a computation.
class Scalar {
 public:
  Scalar() : v_(BigRat(0)) {}
  Scalar(int n) : v_(BigRat(n)) {}
  Scalar(long long n) : v_(BigRat(n)) {}
  Scalar(BigInt n) : v_(BigRat(std::move(n))) {}
  Scalar(BigRat q) : v_(std::move(q)) {}
  explicit Scalar(double d) : v_(d) {}

  static Scalar ratio(BigInt num, BigInt den);

  /// Parses "p/q", an integer, or a decimal string into an exact scalar.
  static Scalar parse(std::string_view text);

  bool is_exact() const noexcept { return v_.index() == 0; }
  bool is_zero() const;
  int sign() const;

  /// Exact accessors; throw on float-mode scalars.
  const BigRat& rational() const;
  BigInt numerator() const;
  BigInt denominator() const;

  double to_double() const;
  /// Same value, float mode (no coercion counted: explicit request).
  Scalar to_float() const { return Scalar(to_double()); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return cmp(a, b) >= 0; }

  Scalar abs() const;
  Scalar pow_int(long long e) const;
  Scalar inverse() const;

  /// Integer exponent e >= 0 with base^e == *this, if one exists (exact mode).
  std::optional<long long> integer_log(const Scalar& base) const;

  /// "p/q" in exact mode (always with denominator, e.g. "2/1"); the shortest
  /// round-trip decimal in float mode.
  std::string str() const;

  /// Process-wide count of exact->float coercions caused by mixed arithmetic.
  static std::uint64_t coercion_count() noexcept;

 private:
  static int cmp(const Scalar& a, const Scalar& b);
  static void note_coercion() noexcept;

  std::variant<BigRat, double> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Compensated (Neumaier) accumulator that degrades gracefully to exact
/// rational accumulation when every addend is exact. Used for the level sums
/// so float-mode results are independent of the iteration batching.
class CompensatedSum {
 public:
  void add(const Scalar& s);
  void merge(const CompensatedSum& other);
  Scalar value() const;

 private:
  void add_double(double x);

  bool float_mode_ = false;
  BigRat exact_{0};
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fy
