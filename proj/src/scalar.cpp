#include "fy/scalar.hpp"

#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fy/errors.hpp"

namespace fy {

namespace {
std::atomic<std::uint64_t> g_coercions{0};
}

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::OrderingViolation: return "OrderingViolation";
    case Errc::OverlapViolation: return "OverlapViolation";
    case Errc::EndpointViolation: return "EndpointViolation";
    case Errc::RatioViolation: return "RatioViolation";
    case Errc::InvalidDigit: return "InvalidDigit";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::IncompatibleIfs: return "IncompatibleIfs";
    case Errc::MissingTailForm: return "MissingTailForm";
    case Errc::ParamOutOfRange: return "ParamOutOfRange";
    case Errc::ExponentTooSmall: return "ExponentTooSmall";
    case Errc::NotWellDefined: return "NotWellDefined";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Scalar Scalar::ratio(BigInt num, BigInt den) {
  if (den == 0) raise(Errc::ParseError, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Scalar(BigRat(std::move(num), std::move(den)));
}

Scalar Scalar::parse(std::string_view text) {
  auto fail = [&] { raise(Errc::ParseError, "bad scalar literal '" + std::string(text) + "'"); };
  size_t i = 0, n = text.size();
  while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  size_t j = n;
  while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
  if (i >= j) fail();
  std::string s(text.substr(i, j - i));

  auto is_int = [](const std::string& t) {
    size_t k = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty() || !is_int(num) || !is_int(den)) fail();
    BigInt d(den);
    if (d == 0) fail();
    return ratio(BigInt(num), std::move(d));
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip = ip.substr(1);
    if (ip.empty() && fp.empty()) fail();
    for (char c : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(ip);
    BigInt scale = 1;
    BigInt frac = 0;
    for (char c : fp) {
      frac = frac * 10 + (c - '0');
      scale *= 10;
    }
    BigRat q(whole * scale + frac, scale);
    if (neg) q = -q;
    return Scalar(std::move(q));
  }
  if (!is_int(s)) fail();
  return Scalar(BigRat(BigInt(s)));
}

bool Scalar::is_zero() const {
  return is_exact() ? std::get<BigRat>(v_) == 0 : std::get<double>(v_) == 0.0;
}

int Scalar::sign() const {
  if (is_exact()) {
    const auto& q = std::get<BigRat>(v_);
    return q == 0 ? 0 : (q < 0 ? -1 : 1);
  }
  double d = std::get<double>(v_);
  return d == 0.0 ? 0 : (d < 0 ? -1 : 1);
}

const BigRat& Scalar::rational() const {
  if (!is_exact()) raise(Errc::ParamOutOfRange, "float-mode scalar has no exact rational value");
  return std::get<BigRat>(v_);
}

BigInt Scalar::numerator() const { return boost::multiprecision::numerator(rational()); }
BigInt Scalar::denominator() const { return boost::multiprecision::denominator(rational()); }

double Scalar::to_double() const {
  return is_exact() ? std::get<BigRat>(v_).convert_to<double>() : std::get<double>(v_);
}

void Scalar::note_coercion() noexcept { g_coercions.fetch_add(1, std::memory_order_relaxed); }
std::uint64_t Scalar::coercion_count() noexcept { return g_coercions.load(std::memory_order_relaxed); }

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(BigRat(-std::get<BigRat>(v_)));
  return Scalar(-std::get<double>(v_));
}

#define FY_SCALAR_BINOP(OPEQ, OP)                                             \
  Scalar& Scalar::OPEQ(const Scalar& o) {                                     \
    if (is_exact() && o.is_exact()) {                                         \
      std::get<BigRat>(v_) OP std::get<BigRat>(o.v_);                         \
      return *this;                                                           \
    }                                                                         \
    if (is_exact() != o.is_exact()) note_coercion();                          \
    double r = to_double();                                                   \
    r OP o.to_double();                                                       \
    v_ = r;                                                                   \
    return *this;                                                             \
  }

FY_SCALAR_BINOP(operator+=, +=)
FY_SCALAR_BINOP(operator-=, -=)
FY_SCALAR_BINOP(operator*=, *=)
#undef FY_SCALAR_BINOP

Scalar& Scalar::operator/=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    if (o.is_zero()) raise(Errc::ParamOutOfRange, "division by zero");
    std::get<BigRat>(v_) /= std::get<BigRat>(o.v_);
    return *this;
  }
  if (is_exact() != o.is_exact()) note_coercion();
  v_ = to_double() / o.to_double();
  return *this;
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = std::get<BigRat>(a.v_);
    const auto& y = std::get<BigRat>(b.v_);
    return x == y ? 0 : (x < y ? -1 : 1);
  }
  double x = a.to_double(), y = b.to_double();
  return x == y ? 0 : (x < y ? -1 : 1);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::pow_int(long long e) const {
  if (e < 0) return inverse().pow_int(-e);
  Scalar base = *this;
  Scalar acc = is_exact() ? Scalar(1) : Scalar(1.0);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Scalar Scalar::inverse() const {
  if (is_zero()) raise(Errc::ParamOutOfRange, "inverse of zero");
  if (is_exact()) return Scalar(BigRat(1) / std::get<BigRat>(v_));
  return Scalar(1.0 / std::get<double>(v_));
}

std::optional<long long> Scalar::integer_log(const Scalar& base) const {
  if (!is_exact() || !base.is_exact()) return std::nullopt;
  if (base <= Scalar(1) || *this <= Scalar(0)) return std::nullopt;
  Scalar acc(1);
  for (long long e = 0; e <= 4096; ++e) {
    if (acc == *this) return e;
    if (acc > *this) return std::nullopt;
    acc *= base;
  }
  return std::nullopt;
}

std::string Scalar::str() const {
  if (is_exact()) {
    return numerator().str() + "/" + denominator().str();
  }
  double d = std::get<double>(v_);
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  (void)ec;
  return std::string(buf, p);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

void CompensatedSum::add_double(double x) {
  double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

void CompensatedSum::add(const Scalar& s) {
  if (!float_mode_ && s.is_exact()) {
    exact_ += s.rational();
    return;
  }
  if (!float_mode_) {
    // First float addend: demote the exact prefix.
    float_mode_ = true;
    sum_ = BigRat(exact_).convert_to<double>();
    comp_ = 0.0;
  }
  add_double(s.to_double());
}

void CompensatedSum::merge(const CompensatedSum& other) {
  if (!other.float_mode_) {
    add(Scalar(BigRat(other.exact_)));
    return;
  }
  if (!float_mode_) {
    float_mode_ = true;
    sum_ = exact_.convert_to<double>();
    comp_ = 0.0;
  }
  add_double(other.sum_);
  add_double(other.comp_);
}

Scalar CompensatedSum::value() const {
  if (!float_mode_) return Scalar(exact_);
  return Scalar(sum_ + comp_);
}

}  // namespace fy
