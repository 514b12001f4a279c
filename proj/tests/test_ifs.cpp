#include "doctest.h"

#include <cmath>
#include <functional>

#include "fy/errors.hpp"
#include "fy/ifs.hpp"

using namespace fy;

namespace {

Ifs make2(const char* r0, const char* t0, const char* r1, const char* t1) {
  return Ifs::make({Scalar(0), Scalar(1)}, {{Scalar::parse(r0), Scalar::parse(t0)},
                                            {Scalar::parse(r1), Scalar::parse(t1)}});
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("construction accepts the canonical families") {
  CHECK(cantor_ifs(1).map_count() == 2);
  CHECK(cantor_ifs(2).map_count() == 3);
  CHECK(binary_interval_ifs().has_touching());
  CHECK_FALSE(cantor_ifs(1).has_touching());
  CHECK(unequal_interval_ifs().touching(0));
}

TEST_CASE("construction rejects bad geometry") {
  CHECK(code_of([] { make2("1/2", "0", "1/2", "1/4"); }) == Errc::OverlapViolation);
  CHECK(code_of([] { make2("1/3", "0", "1/3", "1/3"); }) == Errc::EndpointViolation);
  CHECK(code_of([] { make2("1/3", "1/3", "1/3", "2/3"); }) == Errc::EndpointViolation);
  CHECK(code_of([] { make2("0", "0", "1/2", "1/2"); }) == Errc::RatioViolation);
  CHECK(code_of([] { make2("1/2", "0", "3/2", "-1/2"); }) == Errc::RatioViolation);
  // Middle images out of order, extreme maps fixing the ends.
  CHECK(code_of([] {
          Ifs::make({Scalar(0), Scalar(1)},
                    {{Scalar::ratio(1, 7), Scalar(0)},
                     {Scalar::ratio(1, 7), Scalar::ratio(4, 7)},
                     {Scalar::ratio(1, 7), Scalar::ratio(2, 7)},
                     {Scalar::ratio(1, 7), Scalar::ratio(6, 7)}});
        }) == Errc::OrderingViolation);
  CHECK_THROWS_AS(Ifs::make({Scalar(0), Scalar(1)}, {{Scalar::ratio(1, 2), Scalar(0)}}), Error);
}

TEST_CASE("word intervals match the ternary geometry") {
  Ifs cs = cantor_ifs(1);
  auto [a, b] = cs.word_interval(Word{0, 1});
  CHECK(a == Scalar::ratio(2, 9));
  CHECK(b == Scalar::ratio(3, 9));
  auto [c, d] = cs.word_interval(Word{1, 0});
  CHECK(c == Scalar::ratio(6, 9));
  CHECK(d == Scalar::ratio(7, 9));
  auto [e, f] = cs.word_interval(Word{});
  CHECK(e == Scalar(0));
  CHECK(f == Scalar(1));
  CHECK_THROWS_AS(cs.word_interval(Word{0, 2}), Error);
}

TEST_CASE("gap intervals, including degenerate ones") {
  Ifs cs = cantor_ifs(1);
  auto g0 = cs.gap_intervals(Word{});
  REQUIRE(g0.size() == 1);
  CHECK(g0[0].first == Scalar::ratio(1, 3));
  CHECK(g0[0].second == Scalar::ratio(2, 3));
  auto g1 = cs.gap_intervals(Word{1});
  CHECK(g1[0].first == Scalar::ratio(7, 9));
  CHECK(g1[0].second == Scalar::ratio(8, 9));

  auto gi = binary_interval_ifs().gap_intervals(Word{});
  REQUIRE(gi.size() == 1);
  CHECK(gi[0].first == gi[0].second);
  CHECK(gi[0].first == Scalar::ratio(1, 2));
}

TEST_CASE("addresses evaluate to exact points") {
  Ifs cs = cantor_ifs(1);
  CHECK(cs.point({Word{}, 0}) == Scalar(0));
  CHECK(cs.point({Word{}, 1}) == Scalar(1));
  CHECK(cs.point({Word{0}, 1}) == Scalar::ratio(1, 3));
  CHECK(cs.point({Word{1}, 0}) == Scalar::ratio(2, 3));

  // On the 5-adic family the middle tail names the cell midpoint.
  Ifs cs2 = cantor_ifs(2);
  WordEnumerator en(3, 3);
  while (auto w = en.next()) {
    auto [a, b] = cs2.word_interval(*w);
    CHECK(cs2.point({*w, 1}) == (a + b) / Scalar(2));
  }
  CHECK_THROWS_AS(cs.point({Word{0}, 5}), Error);
}

TEST_CASE("endpoint addresses agree with word intervals to depth 8") {
  for (const Ifs& ifs : {cantor_ifs(1), cantor_ifs(2), binary_interval_ifs(), unequal_interval_ifs()}) {
    const int last = ifs.map_count() - 1;
    for (int n = 0; n <= 8; ++n) {
      WordEnumerator en(ifs.map_count(), n);
      while (auto w = en.next()) {
        auto [a, b] = ifs.word_interval(*w);
        CHECK(ifs.point({*w, 0}) == a);
        CHECK(ifs.point({*w, last}) == b);
      }
    }
  }
}

TEST_CASE("children nest and partition with the gaps") {
  for (const Ifs& ifs : {cantor_ifs(1), cantor_ifs(2), unequal_interval_ifs()}) {
    for (int n = 0; n <= 4; ++n) {
      WordEnumerator en(ifs.map_count(), n);
      while (auto w = en.next()) {
        auto [a, b] = ifs.word_interval(*w);
        auto gaps = ifs.gap_intervals(*w);
        Scalar cursor = a;
        for (int s = 0; s < ifs.map_count(); ++s) {
          auto [ca, cb] = ifs.word_interval(w->child(s));
          CHECK(ca == cursor);
          CHECK(cb - ca == ifs.map(s).ratio * (b - a));
          CHECK(ca >= a);
          CHECK(cb <= b);
          cursor = s < ifs.map_count() - 1 ? gaps[static_cast<size_t>(s)].second : cb;
          if (s < ifs.map_count() - 1) CHECK(gaps[static_cast<size_t>(s)].first == cb);
        }
        CHECK(cursor == b);
      }
    }
  }
}

TEST_CASE("identification law at touching images") {
  for (const Ifs& ifs : {binary_interval_ifs(), unequal_interval_ifs()}) {
    const int last = ifs.map_count() - 1;
    for (int n = 0; n <= 6; ++n) {
      WordEnumerator en(ifs.map_count(), n);
      while (auto w = en.next()) {
        for (int l = 0; l + 1 < ifs.map_count(); ++l) {
          if (!ifs.touching(l)) continue;
          CHECK(ifs.point({w->child(l), last}) == ifs.point({w->child(l + 1), 0}));
        }
      }
    }
  }
}

TEST_CASE("similarity dimension: closed forms and bisection") {
  DimensionResult cs = similarity_dimension(cantor_ifs(1));
  REQUIRE(cs.log_form.has_value());
  CHECK(cs.log_form->first == Scalar(3));
  CHECK(cs.log_form->second == Scalar(2));
  CHECK(cs.value.to_double() == doctest::Approx(0.6309297535714574).epsilon(1e-9));

  DimensionResult bi = similarity_dimension(binary_interval_ifs());
  CHECK(bi.value == Scalar(1));  // exact: 2^1 = 2
  REQUIRE(bi.log_form.has_value());

  DimensionResult un = similarity_dimension(unequal_interval_ifs());
  CHECK_FALSE(un.log_form.has_value());
  CHECK(un.value.to_double() == doctest::Approx(1.0).epsilon(1e-10));

  DimensionResult cs2 = similarity_dimension(cantor_ifs(2));
  CHECK(cs2.value.to_double() == doctest::Approx(std::log(3.0) / std::log(5.0)).epsilon(1e-9));

  // Residual within tolerance, and monotonicity in the ratios.
  Ifs shrunk = Ifs::make({Scalar(0), Scalar(1)}, {{Scalar::ratio(1, 4), Scalar(0)},
                                                  {Scalar::ratio(1, 4), Scalar::ratio(3, 4)}});
  CHECK(similarity_dimension(shrunk).value < cs.value);
  double d = similarity_dimension(unequal_interval_ifs(), Scalar::parse("1/1000000000000")).value.to_double();
  double residual = std::pow(1.0 / 3.0, d) + std::pow(2.0 / 3.0, d) - 1.0;
  CHECK(std::abs(residual) < 1e-9);
}

TEST_CASE("word enumeration is lexicographic and budgeted") {
  Ifs cs = cantor_ifs(1);
  auto words = enumerate_words(cs, 2);
  REQUIRE(words.size() == 4);
  CHECK(words[0] == Word{0, 0});
  CHECK(words[1] == Word{0, 1});
  CHECK(words[2] == Word{1, 0});
  CHECK(words[3] == Word{1, 1});
  CHECK(enumerate_words(cs, 0).size() == 1);
  CHECK(enumerate_words(cantor_ifs(2), 1).size() == 3);
  CHECK_THROWS_AS(enumerate_words(cs, 10, /*cap=*/512), Error);
  CHECK(word_count(2, 10, 1024) == 1024);
}
