#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fy/scalar.hpp"

namespace fy {

struct Interval {
  Scalar a, b;
  Scalar width() const { return b - a; }
};

/// Affine similitude x -> ratio*x + offset with ratio in (0,1).
struct Contraction {
  Scalar ratio, offset;
  Scalar operator()(const Scalar& x) const { return ratio * x + offset; }
  /// Fixed point offset/(1-ratio).
  Scalar fixed_point() const { return offset / (Scalar(1) - ratio); }
};

/// Finite digit word over {0,...,N-1}; the empty word names the identity map.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> digits) : digits_(digits) {}
  explicit Word(std::vector<int> digits) : digits_(std::move(digits)) {}

  int size() const { return static_cast<int>(digits_.size()); }
  bool empty() const { return digits_.empty(); }
  int operator[](int i) const { return digits_[static_cast<size_t>(i)]; }
  std::span<const int> digits() const { return digits_; }
  void push_back(int d) { digits_.push_back(d); }

  Word child(int d) const {
    Word w = *this;
    w.push_back(d);
    return w;
  }

  bool operator==(const Word&) const = default;
  std::string str() const;

 private:
  std::vector<int> digits_;
};

/// A finite prefix followed by one digit repeated forever. Every point the
/// integrator reads (cell endpoints, gap endpoints, the 5-adic midpoints) has
/// this shape, so exact evaluation needs only the prefix plus a closed tail.
struct PointAddress {
  Word prefix;
  int tail = 0;

  bool operator==(const PointAddress&) const = default;
  std::string str() const;
};

struct HolderData {
  Scalar alpha;     // exponent, 0 < alpha <= 1
  Scalar seminorm;  // |f|_alpha
  Scalar sup_norm;  // ||f||
};

/// An ordered family of contractions on a closed interval with images laid
/// out left to right, adjacent images sharing at most an endpoint, and the
/// extreme maps fixing the interval's ends.
class Ifs {
 public:
  static Ifs make(Interval interval, std::vector<Contraction> maps);

  int map_count() const { return static_cast<int>(maps_.size()); }
  const Interval& interval() const { return interval_; }
  const Contraction& map(int s) const;
  const std::vector<Contraction>& maps() const { return maps_; }

  /// (a_w, b_w) = (f_w(a), f_w(b)).
  std::pair<Scalar, Scalar> word_interval(const Word& w) const;
  std::pair<Scalar, Scalar> word_interval(std::span<const int> digits) const;

  /// The N-1 open gaps of f_w(I), left to right; touching images yield a
  /// degenerate gap with equal endpoints.
  std::vector<std::pair<Scalar, Scalar>> gap_intervals(const Word& w) const;

  /// pi(prefix tail tail ...): the tail map's fixed point pushed through the
  /// prefix. Exact in exact mode.
  Scalar point(const PointAddress& p) const;
  Scalar point(std::span<const int> prefix, int tail) const;

  /// b_l == a_{l+1} for adjacent top-level images (the pi identification).
  bool touching(int l) const;
  bool has_touching() const;

  bool operator==(const Ifs& o) const;

 private:
  Ifs(Interval interval, std::vector<Contraction> maps)
      : interval_(std::move(interval)), maps_(std::move(maps)) {}
  void check_digit(int d) const;

  Interval interval_;
  std::vector<Contraction> maps_;
};

struct DimensionResult {
  Scalar value;  // float-mode root of sum r_s^d = 1 (or exact when closed form)
  /// (base, argument) with value = log_base(argument), present when all
  /// ratios are equal.
  std::optional<std::pair<Scalar, Scalar>> log_form;
};

Scalar default_dimension_tol();

/// Bisection on [0,1]; the map d -> sum r_s^d is strictly decreasing.
DimensionResult similarity_dimension(const Ifs& ifs, const Scalar& tol = default_dimension_tol());

/// sum_s r_s^e for real e (float unless e is a nonnegative integer).
Scalar ratio_power_sum(const Ifs& ifs, const Scalar& exponent);

std::uint64_t default_word_cap();  // FY_MAX_WORDS or 2^24

/// N^n, guarded by the enumeration cap.
std::uint64_t word_count(int n_maps, int depth, std::uint64_t cap = default_word_cap());

/// Lexicographic enumeration of S^n.
class WordEnumerator {
 public:
  WordEnumerator(int n_maps, int depth, std::uint64_t cap = default_word_cap());
  std::optional<Word> next();
  std::uint64_t total() const { return total_; }

 private:
  int n_maps_, depth_;
  std::uint64_t total_, index_ = 0;
  std::vector<int> digits_;
};

std::vector<Word> enumerate_words(const Ifs& ifs, int depth, std::uint64_t cap = default_word_cap());

/// Writes the lexicographic word of `index` into `digits` (size = depth).
void decode_word(std::uint64_t index, int n_maps, std::span<int> digits);

/// Factories used throughout: the (2k+1)-adic Cantor set IFS on [0,1]
/// (maps x/(2k+1) + 2s/(2k+1), s = 0..k; k = 1 is the middle-third set),
/// the binary interval IFS {x/2, x/2 + 1/2}, and the unequal-ratio interval
/// IFS {x/3, 2x/3 + 1/3}.
Ifs cantor_ifs(int k);
Ifs binary_interval_ifs();
Ifs unequal_interval_ifs();

/// Same geometry with every scalar demoted to float mode.
Ifs to_float(const Ifs& ifs);

}  // namespace fy
