#include "fy/ifs.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fy/errors.hpp"

namespace fy {

std::string Word::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < digits_.size(); ++i) {
    if (i) os << ',';
    os << digits_[i];
  }
  os << ')';
  return os.str();
}

std::string PointAddress::str() const {
  std::ostringstream os;
  os << prefix.str() << '+' << tail << "...";
  return os.str();
}

Ifs Ifs::make(Interval interval, std::vector<Contraction> maps) {
  if (maps.size() < 2) raise(Errc::ParamOutOfRange, "an IFS needs at least two maps");
  if (!(interval.a < interval.b)) raise(Errc::ParamOutOfRange, "interval must satisfy a < b");
  for (const auto& m : maps) {
    if (!(Scalar(0) < m.ratio && m.ratio < Scalar(1)))
      raise(Errc::RatioViolation, "similarity ratio must lie in (0,1), got " + m.ratio.str());
  }
  const int n = static_cast<int>(maps.size());
  auto img_a = [&](int s) { return maps[s](interval.a); };
  auto img_b = [&](int s) { return maps[s](interval.b); };
  for (int s = 0; s + 1 < n; ++s) {
    if (!(img_a(s) < img_a(s + 1)))
      raise(Errc::OrderingViolation, "images not ordered left to right at index " + std::to_string(s));
    if (img_b(s) > img_a(s + 1))
      raise(Errc::OverlapViolation, "images " + std::to_string(s) + " and " + std::to_string(s + 1) +
                                        " overlap in more than one point");
  }
  for (int s = 0; s < n; ++s) {
    if (img_a(s) < interval.a || img_b(s) > interval.b)
      raise(Errc::OverlapViolation, "map " + std::to_string(s) + " escapes the ambient interval");
  }
  if (img_a(0) != interval.a)
    raise(Errc::EndpointViolation, "first map must fix the left endpoint, maps a to " + img_a(0).str());
  if (img_b(n - 1) != interval.b)
    raise(Errc::EndpointViolation, "last map must fix the right endpoint, maps b to " + img_b(n - 1).str());
  return Ifs(std::move(interval), std::move(maps));
}

const Contraction& Ifs::map(int s) const {
  check_digit(s);
  return maps_[static_cast<size_t>(s)];
}

void Ifs::check_digit(int d) const {
  if (d < 0 || d >= map_count())
    raise(Errc::InvalidDigit, "digit " + std::to_string(d) + " out of range for " +
                                  std::to_string(map_count()) + " maps");
}

std::pair<Scalar, Scalar> Ifs::word_interval(const Word& w) const { return word_interval(w.digits()); }

std::pair<Scalar, Scalar> Ifs::word_interval(std::span<const int> digits) const {
  Scalar a = interval_.a, b = interval_.b;
  for (size_t i = digits.size(); i-- > 0;) {
    check_digit(digits[i]);
    const auto& m = maps_[static_cast<size_t>(digits[i])];
    a = m(a);
    b = m(b);
  }
  return {a, b};
}

std::vector<std::pair<Scalar, Scalar>> Ifs::gap_intervals(const Word& w) const {
  auto [a, b] = word_interval(w);
  // Child geometry scales linearly inside [a_w, b_w].
  Scalar span = b - a;
  Scalar unit = interval_.width();
  std::vector<std::pair<Scalar, Scalar>> gaps;
  gaps.reserve(static_cast<size_t>(map_count() - 1));
  for (int l = 0; l + 1 < map_count(); ++l) {
    Scalar left = a + (maps_[static_cast<size_t>(l)](interval_.b) - interval_.a) * span / unit;
    Scalar right = a + (maps_[static_cast<size_t>(l + 1)](interval_.a) - interval_.a) * span / unit;
    gaps.emplace_back(left, right);
  }
  return gaps;
}

Scalar Ifs::point(const PointAddress& p) const { return point(p.prefix.digits(), p.tail); }

Scalar Ifs::point(std::span<const int> prefix, int tail) const {
  check_digit(tail);
  Scalar x = maps_[static_cast<size_t>(tail)].fixed_point();
  for (size_t i = prefix.size(); i-- > 0;) {
    check_digit(prefix[i]);
    x = maps_[static_cast<size_t>(prefix[i])](x);
  }
  return x;
}

bool Ifs::touching(int l) const {
  if (l < 0 || l + 1 >= map_count()) raise(Errc::InvalidDigit, "no adjacency at " + std::to_string(l));
  return maps_[static_cast<size_t>(l)](interval_.b) == maps_[static_cast<size_t>(l + 1)](interval_.a);
}

bool Ifs::has_touching() const {
  for (int l = 0; l + 1 < map_count(); ++l)
    if (touching(l)) return true;
  return false;
}

bool Ifs::operator==(const Ifs& o) const {
  if (map_count() != o.map_count()) return false;
  if (interval_.a != o.interval_.a || interval_.b != o.interval_.b) return false;
  for (int s = 0; s < map_count(); ++s)
    if (maps_[static_cast<size_t>(s)].ratio != o.maps_[static_cast<size_t>(s)].ratio ||
        maps_[static_cast<size_t>(s)].offset != o.maps_[static_cast<size_t>(s)].offset)
      return false;
  return true;
}

Scalar default_dimension_tol() { return Scalar::ratio(1, BigInt("1000000000000")); }

Scalar ratio_power_sum(const Ifs& ifs, const Scalar& exponent) {
  bool integral = exponent.is_exact() && exponent.denominator() == 1 && exponent.sign() >= 0;
  Scalar sum = integral ? Scalar(0) : Scalar(0.0);
  for (const auto& m : ifs.maps()) {
    if (integral)
      sum += m.ratio.pow_int(exponent.numerator().convert_to<long long>());
    else
      sum += Scalar(std::pow(m.ratio.to_double(), exponent.to_double()));
  }
  return sum;
}

DimensionResult similarity_dimension(const Ifs& ifs, const Scalar& tol) {
  if (!(tol > Scalar(0))) raise(Errc::ParamOutOfRange, "tolerance must be positive");

  bool equal_ratios = true;
  for (const auto& m : ifs.maps())
    if (m.ratio != ifs.maps().front().ratio) equal_ratios = false;

  std::optional<std::pair<Scalar, Scalar>> log_form;
  if (equal_ratios)
    log_form = std::make_pair(ifs.maps().front().ratio.inverse(), Scalar(ifs.map_count()));

  // If (1/r)^d = N for an integer d the dimension is exact.
  if (equal_ratios) {
    if (auto e = Scalar(ifs.map_count()).integer_log(ifs.maps().front().ratio.inverse()))
      return {Scalar(*e), log_form};
  }

  double lo = 0.0, hi = 1.0;
  auto residual = [&](double d) {
    double s = 0.0;
    for (const auto& m : ifs.maps()) s += std::pow(m.ratio.to_double(), d);
    return s - 1.0;
  };
  double t = tol.to_double();
  double mid = 0.5;
  for (int it = 0; it < 256; ++it) {
    mid = 0.5 * (lo + hi);
    double r = residual(mid);
    if (std::fabs(r) < t) break;
    (r > 0.0 ? lo : hi) = mid;
  }
  return {Scalar(mid), log_form};
}

std::uint64_t default_word_cap() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("FY_MAX_WORDS")) {
      unsigned long long v = std::strtoull(env, nullptr, 10);
      if (v >= 1) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 24;
  }();
  return cap;
}

std::uint64_t word_count(int n_maps, int depth, std::uint64_t cap) {
  if (depth < 0) raise(Errc::ParamOutOfRange, "negative depth");
  std::uint64_t count = 1;
  for (int i = 0; i < depth; ++i) {
    if (count > cap / static_cast<std::uint64_t>(n_maps))
      raise(Errc::BudgetExceeded, "N^n exceeds the word cap of " + std::to_string(cap));
    count *= static_cast<std::uint64_t>(n_maps);
  }
  if (count > cap)
    raise(Errc::BudgetExceeded, "N^n exceeds the word cap of " + std::to_string(cap));
  return count;
}

WordEnumerator::WordEnumerator(int n_maps, int depth, std::uint64_t cap)
    : n_maps_(n_maps), depth_(depth), total_(word_count(n_maps, depth, cap)),
      digits_(static_cast<size_t>(depth), 0) {}

std::optional<Word> WordEnumerator::next() {
  if (index_ >= total_) return std::nullopt;
  if (index_ > 0) {
    for (int i = depth_ - 1; i >= 0; --i) {
      if (++digits_[static_cast<size_t>(i)] < n_maps_) break;
      digits_[static_cast<size_t>(i)] = 0;
    }
  }
  ++index_;
  return Word(digits_);
}

std::vector<Word> enumerate_words(const Ifs& ifs, int depth, std::uint64_t cap) {
  WordEnumerator en(ifs.map_count(), depth, cap);
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(en.total()));
  while (auto w = en.next()) out.push_back(std::move(*w));
  return out;
}

void decode_word(std::uint64_t index, int n_maps, std::span<int> digits) {
  for (size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % static_cast<std::uint64_t>(n_maps));
    index /= static_cast<std::uint64_t>(n_maps);
  }
}

Ifs cantor_ifs(int k) {
  if (k < 1) raise(Errc::ParamOutOfRange, "k must be positive");
  int m = 2 * k + 1;
  std::vector<Contraction> maps;
  maps.reserve(static_cast<size_t>(k + 1));
  for (int s = 0; s <= k; ++s) maps.push_back({Scalar::ratio(1, m), Scalar::ratio(2 * s, m)});
  return Ifs::make({Scalar(0), Scalar(1)}, std::move(maps));
}

Ifs binary_interval_ifs() {
  return Ifs::make({Scalar(0), Scalar(1)},
                   {{Scalar::ratio(1, 2), Scalar(0)}, {Scalar::ratio(1, 2), Scalar::ratio(1, 2)}});
}

Ifs unequal_interval_ifs() {
  return Ifs::make({Scalar(0), Scalar(1)},
                   {{Scalar::ratio(1, 3), Scalar(0)}, {Scalar::ratio(2, 3), Scalar::ratio(1, 3)}});
}

Ifs to_float(const Ifs& ifs) {
  std::vector<Contraction> maps;
  maps.reserve(static_cast<size_t>(ifs.map_count()));
  for (const auto& m : ifs.maps()) maps.push_back({m.ratio.to_float(), m.offset.to_float()});
  return Ifs::make({ifs.interval().a.to_float(), ifs.interval().b.to_float()}, std::move(maps));
}

}  // namespace fy
