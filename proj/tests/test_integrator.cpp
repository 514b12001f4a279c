#include "doctest.h"

#include <random>
#include <vector>

#include "fy/errors.hpp"
#include "fy/integrator.hpp"
#include "fy/parallel.hpp"

using namespace fy;

namespace {

KFunction one() { return KFunction::constant(Scalar(1)); }

KFunction random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 6), pick(0, depth > 0 ? 5 : 2);
  switch (pick(rng)) {
    case 0: return KFunction::constant(Scalar::ratio(num(rng), den(rng)));
    case 1: return KFunction::identity();
    case 2: return KFunction::cantor(1, Scalar::ratio(den(rng), 7));
    case 3: return KFunction::sum(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4: return KFunction::product(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    default: return KFunction::scale(Scalar::ratio(num(rng), den(rng)), random_tree(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("trace terms") {
  CHECK(trace_term(Scalar(1), Scalar(1), Scalar(0), Scalar(1)) == Scalar(2));
  CHECK(trace_term(Scalar::ratio(3, 7), Scalar::ratio(-2, 5), Scalar::ratio(1, 2),
                   Scalar::ratio(1, 2)) == Scalar(0));
  CHECK(trace_term(Scalar(0), Scalar(1), Scalar(0), Scalar(1)) == Scalar(1));
}

TEST_CASE("subdivision defect equals the cross difference") {
  CHECK(subdivision_defect(Scalar(5), Scalar(5), Scalar(5), Scalar(1), Scalar(7), Scalar(2)) ==
        Scalar(0));
  CHECK(subdivision_defect(Scalar(1), Scalar(4), Scalar(2), Scalar(1), Scalar(4), Scalar(2)) ==
        Scalar(0));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  auto r = [&] { return Scalar::ratio(num(rng), den(rng)); };
  for (int i = 0; i < 200; ++i) {
    Scalar fa = r(), fx = r(), fb = r(), ga = r(), gx = r(), gb = r();
    CHECK(subdivision_defect(fa, fx, fb, ga, gx, gb) ==
          (fx - fa) * (gb - gx) - (fb - fx) * (gx - ga));
  }
}

TEST_CASE("cell sums against the Cantor family closed forms") {
  for (int k : {1, 2}) {
    Ifs cs = cantor_ifs(k);
    for (const Scalar& p : {Scalar::ratio(1, 3), Scalar::ratio(1, 2), Scalar::ratio(5, 8)}) {
      KFunction g = KFunction::cantor(k, p);
      for (int n = 0; n <= 6; ++n)
        CHECK(phi_n(cs, one(), g, n) ==
              Scalar(2) * (Scalar(k + 1) * p).pow_int(n));
    }
    Scalar p = Scalar::ratio(2, 7), q = Scalar::ratio(3, 5);
    KFunction f = KFunction::cantor(k, p), g = KFunction::cantor(k, q);
    for (int n = 0; n <= 5; ++n)
      CHECK(phi_n(cs, f, g, n) == (Scalar(k + 1) * q).pow_int(n));
  }
}

TEST_CASE("gap sums: closed form, gap constancy, counterexample family") {
  Ifs cs = cantor_ifs(1);
  KFunction c = KFunction::cantor(1, Scalar::ratio(1, 2));
  for (int n = 1; n <= 6; ++n) {
    CHECK(psi_n(cs, one(), c, n) == Scalar(0));
    CHECK(psi_n(cs, KFunction::identity(), c, n) == Scalar(0));
  }

  for (int m = 1; m <= 5; ++m) {
    Scalar q = Scalar::ratio(m, 2 * m + 1);
    KFunction gm = KFunction::cantor(1, q);
    for (int n = 1; n <= 6; ++n) {
      Scalar want = Scalar(2) * (Scalar(1) - Scalar(2) * q) * (Scalar(2) * q).pow_int(n - 1);
      CHECK(psi_n(cs, one(), gm, n) == want);
    }
  }

  for (int k : {1, 2}) {
    Ifs host = cantor_ifs(k);
    Scalar p = Scalar::ratio(2, 5), q = Scalar::ratio(3, 7);
    KFunction f = KFunction::cantor(k, p), g = KFunction::cantor(k, q);
    for (int n = 1; n <= 5; ++n) {
      Scalar want = ((Scalar(1) - q) / Scalar(k) - q) * q.pow_int(n - 1) * Scalar(k) *
                    Scalar(k + 1).pow_int(n - 1);
      CHECK(psi_n(host, f, g, n) == want);
    }
  }
  CHECK_THROWS_AS(psi_n(cs, one(), c, 0), Error);
}

TEST_CASE("bilinearity and annihilation of constants") {
  Ifs cs = cantor_ifs(1);
  std::mt19937 rng(31);
  KFunction f1 = random_tree(rng, 2), f2 = random_tree(rng, 2), g = random_tree(rng, 2);
  Scalar a = Scalar::ratio(3, 4), b = Scalar::ratio(-2, 7);
  KFunction combo = KFunction::sum(KFunction::scale(a, f1), KFunction::scale(b, f2));
  for (int n = 0; n <= 4; ++n) {
    CHECK(phi_n(cs, combo, g, n) == a * phi_n(cs, f1, g, n) + b * phi_n(cs, f2, g, n));
    CHECK(phi_n(cs, g, combo, n) == a * phi_n(cs, g, f1, n) + b * phi_n(cs, g, f2, n));
    CHECK(phi_n(cs, f1, KFunction::constant(Scalar::ratio(9, 2)), n) == Scalar(0));
  }
}

TEST_CASE("level recursion through the subdivision defects") {
  // phi_{n+1} + psi_{n+1} - phi_n telescopes to the per-word cross defects of
  // the 2N-1 pieces (children and gaps) of each cell.
  std::mt19937 rng(67);
  for (int k : {1, 2}) {
    Ifs host = cantor_ifs(k);
    KFunction f = k == 1 ? random_tree(rng, 2) : KFunction::cantor(2, Scalar::ratio(2, 5));
    KFunction g = k == 1 ? random_tree(rng, 2) : KFunction::identity();
    const int N = host.map_count();
    for (int n = 0; n <= (k == 1 ? 5 : 3); ++n) {
      Scalar direct = phi_n(host, f, g, n + 1) + psi_n(host, f, g, n + 1) - phi_n(host, f, g, n);
      Scalar defects(0);
      WordEnumerator en(N, n);
      while (auto w = en.next()) {
        // Boundary points t_0..t_{2N-1} of the children and gaps, left to right.
        std::vector<Scalar> fv, gv;
        for (int s = 0; s < N; ++s) {
          fv.push_back(f.eval(host, {w->child(s), 0}));
          fv.push_back(f.eval(host, {w->child(s), N - 1}));
          gv.push_back(g.eval(host, {w->child(s), 0}));
          gv.push_back(g.eval(host, {w->child(s), N - 1}));
        }
        for (size_t j = 1; j + 1 < fv.size(); ++j) {
          // Join [t_0,t_j] with [t_j,t_{j+1}].
          defects += (fv[j] - fv[0]) * (gv[j + 1] - gv[j]) - (fv[j + 1] - fv[j]) * (gv[j] - gv[0]);
        }
      }
      CHECK(direct == defects);
    }
  }
}

TEST_CASE("exact sums do not depend on the schedule") {
  Ifs cs = cantor_ifs(1);
  std::mt19937 rng(13);
  KFunction f = random_tree(rng, 2), g = random_tree(rng, 2);
  Scalar base = phi_n(cs, f, g, 6);
  int saved = worker_count();
  for (int workers : {1, 2, 8}) {
    set_worker_count(workers);
    CHECK(phi_n(cs, f, g, 6) == base);
  }
  set_worker_count(saved);
}

TEST_CASE("float sums are reproducible across worker counts") {
  Ifs bi = to_float(binary_interval_ifs());
  KFunction f = KFunction::identity();
  KFunction g = KFunction::power(KFunction::identity(), 2);
  int saved = worker_count();
  set_worker_count(1);
  Scalar s1 = phi_n(bi, f, g, 14);
  set_worker_count(8);
  Scalar s8 = phi_n(bi, f, g, 14);
  set_worker_count(saved);
  CHECK(s1.to_double() == s8.to_double());  // bit-identical
}

TEST_CASE("integration resolves the geometric trichotomy") {
  Ifs cs = cantor_ifs(1);
  SUBCASE("decay to zero, exactly") {
    IntegralResult r = integrate(cs, one(), KFunction::cantor(1, Scalar::ratio(1, 3)));
    CHECK(r.status == IntegrationStatus::Converged);
    CHECK(*r.estimate == Scalar(0));
    CHECK(r.estimate->is_exact());
    CHECK(r.coercions == 0);
  }
  SUBCASE("constant value") {
    IntegralResult r = integrate(cs, one(), KFunction::cantor(1, Scalar::ratio(1, 2)));
    CHECK(r.status == IntegrationStatus::Converged);
    CHECK(*r.estimate == Scalar(2));
    CHECK_FALSE(r.growth_ratio.has_value());
  }
  SUBCASE("geometric growth") {
    IntegralResult r = integrate(cs, one(), KFunction::cantor(1, Scalar::ratio(3, 4)));
    CHECK(r.status == IntegrationStatus::Diverged);
    CHECK_FALSE(r.estimate.has_value());
    CHECK(*r.growth_ratio == Scalar::ratio(3, 2));
  }
  SUBCASE("nontrivial geometric limit") {
    // phi_n(x^2, c) = 3/4 + (1/9)^n / 4: the extrapolated limit is exact.
    KFunction x2 = KFunction::power(KFunction::identity(), 2);
    IntegralResult r = integrate(cs, x2, KFunction::cantor(1, Scalar::ratio(1, 2)));
    CHECK(r.status == IntegrationStatus::Converged);
    CHECK(*r.estimate == Scalar::ratio(3, 4));
  }
  SUBCASE("budget exhaustion") {
    ConvergenceConfig cfg;
    cfg.max_depth = 2;
    cfg.consecutive = 5;
    IntegralResult r = integrate(cs, one(), KFunction::cantor(1, Scalar::ratio(1, 3)), cfg);
    CHECK(r.status == IntegrationStatus::BudgetExhausted);
    CHECK_FALSE(r.estimate.has_value());
  }
  SUBCASE("word budget ends the run as a status, not an exception") {
    ConvergenceConfig cfg;
    cfg.max_depth = 10;
    cfg.max_words = 16;
    cfg.consecutive = 9;
    IntegralResult r = integrate(cs, one(), KFunction::cantor(1, Scalar::ratio(1, 3)), cfg);
    CHECK(r.status == IntegrationStatus::BudgetExhausted);
    CHECK(r.depth() == 4);  // 2^4 = 16 words is the last affordable level
  }
  SUBCASE("sequences are recorded per level") {
    IntegralResult r = integrate(cs, one(), KFunction::cantor(1, Scalar::ratio(1, 3)));
    REQUIRE(r.phi_seq.size() >= 2);
    CHECK(r.phi_seq.size() == r.psi_seq.size() + 1);
    CHECK(r.phi_seq[0] == Scalar(2));
    CHECK(r.phi_seq[1] == Scalar::ratio(4, 3));
  }
}

TEST_CASE("integration validates its configuration") {
  Ifs cs = cantor_ifs(1);
  ConvergenceConfig cfg;
  cfg.tol = Scalar(0);
  CHECK_THROWS_AS(integrate(cs, one(), one(), cfg), Error);
  ConvergenceConfig cfg2;
  cfg2.consecutive = 0;
  CHECK_THROWS_AS(integrate(cs, one(), one(), cfg2), Error);
}

TEST_CASE("vanishing bound") {
  Ifs cs = cantor_ifs(1);
  HolderData hd = cantor_holder_data({1, Scalar::ratio(1, 3)});
  CHECK(vanishing_bound(cs, Scalar(1), hd, 0) == Scalar(6));  // 2 * 1 * 1 * 3
  KFunction g = KFunction::cantor(1, Scalar::ratio(1, 3));
  for (int n = 0; n <= 10; ++n)
    CHECK(phi_n(cs, one(), g, n).abs() <= vanishing_bound(cs, Scalar(1), hd, n));
  // With a fractional exponent above the dimension the per-level factor is
  // below one.
  HolderData frac{Scalar(0.7), Scalar(1.0), Scalar(1.0)};
  double ratio = vanishing_bound(cs, Scalar(1.0), frac, 5).to_double() /
                 vanishing_bound(cs, Scalar(1.0), frac, 4).to_double();
  CHECK(ratio == doctest::Approx(2.0 * std::pow(3.0, -0.7)).epsilon(1e-12));
  CHECK(ratio < 1.0);
}

TEST_CASE("tail bound and its telescoping contract") {
  Ifs cs = cantor_ifs(1);
  HolderData hf = cantor_holder_data({1, Scalar::ratio(1, 2)});   // exponent log_3 2
  HolderData hg = cantor_holder_data({1, Scalar::ratio(1, 3)});   // exponent 1
  Scalar b0 = tail_bound(cs, hf, hg, 0);
  Scalar b1 = tail_bound(cs, hf, hg, 1);
  CHECK(b1 < b0);
  CHECK(b1 > Scalar(0));

  // alpha + beta = 1 gives sigma = 2/3 exactly.
  HolderData half{Scalar::ratio(1, 2), Scalar(1), Scalar(1)};
  Scalar t0 = tail_bound(cs, half, half, 0);
  CHECK(t0 == Scalar(2) * Scalar(5) * Scalar::ratio(3, 1));  // 2*1*1*(2N+1)*(b-a)/(1-sigma)
  CHECK(tail_bound(cs, half, half, 3) == t0 * Scalar::ratio(8, 27));

  // Exponent sums at or below the dimension are rejected.
  HolderData tiny{Scalar(0.2), Scalar(1.0), Scalar(1.0)};
  CHECK_THROWS_AS(tail_bound(cs, tiny, tiny, 1), Error);

  // |phi_{n+m} - phi_n| <= tail_bound(n) + |sum psi| for the pair (c, c_{1,1/3}).
  KFunction f = KFunction::cantor(1, Scalar::ratio(1, 2));
  KFunction g = KFunction::cantor(1, Scalar::ratio(1, 3));
  std::vector<Scalar> phis, psis;
  for (int n = 0; n <= 8; ++n) phis.push_back(phi_n(cs, f, g, n));
  for (int n = 1; n <= 8; ++n) psis.push_back(psi_n(cs, f, g, n));
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; n + m <= 8; ++m) {
      Scalar lhs = (phis[static_cast<size_t>(n + m)] - phis[static_cast<size_t>(n)]).abs();
      Scalar psi_sum(0);
      for (int r = n; r < n + m; ++r) psi_sum += psis[static_cast<size_t>(r)];  // psi_{r+1}
      double rhs = tail_bound(cs, hf, hg, n).to_double() + psi_sum.abs().to_double();
      CHECK(lhs.to_double() <= rhs + 1e-12);
    }
}

TEST_CASE("holder data flows into the integration bounds") {
  Ifs cs = cantor_ifs(1);
  ConvergenceConfig cfg;
  cfg.holder_f = HolderData{Scalar::ratio(1, 2), Scalar(1), Scalar(1)};
  cfg.holder_g = HolderData{Scalar::ratio(1, 2), Scalar(1), Scalar(1)};
  IntegralResult r = integrate(cs, one(), KFunction::cantor(1, Scalar::ratio(1, 3)), cfg);
  REQUIRE(r.bound_seq.has_value());
  CHECK(r.bound_seq->size() == r.psi_seq.size());
  CHECK((*r.bound_seq)[1] < (*r.bound_seq)[0]);

  ConvergenceConfig bad;
  bad.holder_f = HolderData{Scalar(0.1), Scalar(1.0), Scalar(1.0)};
  bad.holder_g = HolderData{Scalar(0.1), Scalar(1.0), Scalar(1.0)};
  CHECK_THROWS_AS(integrate(cs, one(), one(), bad), Error);
}

TEST_CASE("budget errors surface as exceptions from raw sums") {
  Ifs cs = cantor_ifs(1);
  SumOptions opts;
  opts.max_words = 16;
  CHECK_THROWS_AS(phi_n(cs, one(), one(), 5, opts), Error);
  CHECK_NOTHROW(phi_n(cs, one(), one(), 4, opts));
}
