#include "doctest.h"

#include <sstream>

#include <nlohmann/json.hpp>

#include "fy/dsl.hpp"
#include "fy/errors.hpp"
#include "fy/json_io.hpp"

using namespace fy;

TEST_CASE("expression parsing and evaluation") {
  Ifs cs = cantor_ifs(1);
  DslContext ctx{&cs};
  PointAddress p23{Word{1}, 0};  // the point 2/3

  CHECK(parse_function("const(3/4)", ctx).eval(cs, p23) == Scalar::ratio(3, 4));
  CHECK(parse_function("x", ctx).eval(cs, p23) == Scalar::ratio(2, 3));
  CHECK(parse_function("x^2", ctx).eval(cs, p23) == Scalar::ratio(4, 9));
  CHECK(parse_function("cantor(1,1/2)", ctx).eval(cs, p23) == Scalar::ratio(1, 2));
  CHECK(parse_function("step(1/3)", ctx).eval(cs, p23) == Scalar(1));
  CHECK(parse_function("step(0.9)", ctx).eval(cs, p23) == Scalar(0));
  CHECK(parse_function("x + const(1/3)", ctx).eval(cs, p23) == Scalar(1));
  CHECK(parse_function("x * x + const(-1/9)", ctx).eval(cs, p23) == Scalar::ratio(3, 9));
  CHECK(parse_function("scale(-3, x)", ctx).eval(cs, p23) == Scalar(-2));
  CHECK(parse_function("(x + const(1)) ^ 2", ctx).eval(cs, p23) == Scalar::ratio(25, 9));
  // * binds tighter than +.
  CHECK(parse_function("const(1) + x * const(3)", ctx).eval(cs, p23) == Scalar(3));
}

TEST_CASE("digit-weighted literals") {
  Ifs cs2 = cantor_ifs(2);
  DslContext ctx{&cs2};
  KFunction h = parse_function("digitw([0,-1,2];1/3)", ctx);
  CHECK(h.eval(cs2, {Word{}, 2}) - h.eval(cs2, {Word{}, 0}) == Scalar(1));
}

TEST_CASE("pullback literals need both systems in scope") {
  Ifs src = binary_interval_ifs();
  Ifs tgt = unequal_interval_ifs();
  DslContext ctx{&src, &tgt};
  KFunction f = parse_function("pullback([1,0], x)", ctx);
  // (x o T)(1) with flipped digits lands on the target's left endpoint image.
  CHECK(f.eval(src, {Word{}, 1}) == Scalar(0));
  DslContext no_target{&src};
  CHECK_THROWS_AS(parse_function("pullback([1,0], x)", no_target), Error);

  // Pullbacks compose inside larger expressions.
  KFunction g = parse_function("pullback([0,1], (x + const(1)) * x) + const(2)", ctx);
  Scalar y = tgt.point({Word{}, 1});  // image of the source's right endpoint
  CHECK(g.eval(src, {Word{}, 1}) == (y + Scalar(1)) * y + Scalar(2));
}

TEST_CASE("parse errors") {
  Ifs cs = cantor_ifs(1);
  DslContext ctx{&cs};
  CHECK_THROWS_AS(parse_function("", ctx), Error);
  CHECK_THROWS_AS(parse_function("x +", ctx), Error);
  CHECK_THROWS_AS(parse_function("x) ", ctx), Error);
  CHECK_THROWS_AS(parse_function("spline(3)", ctx), Error);
  CHECK_THROWS_AS(parse_function("const(1/0)", ctx), Error);
  CHECK_THROWS_AS(parse_function("x^-2", ctx), Error);
  CHECK_THROWS_AS(parse_function("cantor(1)", ctx), Error);
}

TEST_CASE("float-mode parsing demotes scalars") {
  Ifs cs = to_float(cantor_ifs(1));
  DslContext ctx{&cs, nullptr, 8, /*float_mode=*/true};
  Scalar v = parse_function("cantor(1,1/2)", ctx).eval(cs, {Word{1}, 0});
  CHECK_FALSE(v.is_exact());
  CHECK(v.to_double() == 0.5);
}

TEST_CASE("IFS json round trip") {
  nlohmann::json j = {{"interval", {"0", "1"}},
                      {"maps", {{{"r", "1/3"}, {"t", "0"}}, {{"r", "1/3"}, {"t", "2/3"}}}}};
  Ifs parsed = ifs_from_json(j);
  CHECK(parsed == cantor_ifs(1));
  CHECK(ifs_from_json(ifs_to_json(parsed)) == parsed);

  nlohmann::json mixed = {{"interval", {0, 1}},
                          {"maps", {{{"r", "0.5"}, {"t", 0}}, {{"r", "1/2"}, {"t", "0.5"}}}}};
  CHECK(ifs_from_json(mixed) == binary_interval_ifs());

  CHECK_THROWS_AS(ifs_from_json(nlohmann::json{{"maps", nlohmann::json::array()}}), Error);
  nlohmann::json bad = j;
  bad["maps"][0]["r"] = "5/3";
  CHECK_THROWS_AS(ifs_from_json(bad), Error);
}

TEST_CASE("result tables round-trip their rationals") {
  Ifs cs = cantor_ifs(1);
  IntegralResult r = integrate(cs, KFunction::constant(Scalar(1)),
                               KFunction::cantor(1, Scalar::ratio(1, 3)));
  std::ostringstream os;
  result_to_csv(os, r);
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  CHECK(header == "n,phi_n,psi_n,delta,tail_bound");
  size_t rows = 0;
  while (std::getline(is, line)) {
    auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
    Scalar phi = Scalar::parse(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(phi == r.phi_seq[rows]);
    ++rows;
  }
  CHECK(rows == r.phi_seq.size());

  nlohmann::json j = result_to_json(r);
  CHECK(j["status"] == "Converged");
  CHECK(Scalar::parse(j["estimate"].get<std::string>()) == Scalar(0));
  CHECK(j["levels"].size() == r.phi_seq.size());
  CHECK(Scalar::parse(j["levels"][1]["psi"].get<std::string>()) == r.psi_seq[0]);
}
