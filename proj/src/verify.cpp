#include "fy/verify.hpp"

#include <random>
#include <sstream>

#include "fy/identities.hpp"
#include "fy/parallel.hpp"
#include "fy/substitution.hpp"
#include "fy/young.hpp"

namespace fy {

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string render(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks)
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << (c.detail.empty() ? "" : "  " + c.detail)
       << '\n';
  return os.str();
}

namespace {

KFunction one() { return KFunction::constant(Scalar(1)); }
KFunction x_pow(int m) { return KFunction::power(KFunction::identity(), m); }
KFunction cantor_c() { return KFunction::cantor(1, Scalar::ratio(1, 2)); }

void check_01_moments(VerifyReport& rep) {
  const Scalar expected[] = {Scalar(2),
                             Scalar(1),
                             Scalar::ratio(3, 4),
                             Scalar::ratio(5, 8),
                             Scalar::ratio(87, 160),
                             Scalar::ratio(31, 64),
                             Scalar::ratio(5278905, 11927552)};
  auto table = moment_table(6);
  std::ostringstream bad;
  bool pass = true;
  for (int m = 0; m <= 6; ++m) {
    if (table[static_cast<size_t>(m)] != expected[m]) {
      pass = false;
      bad << (bad.tellp() > 0 ? "; " : "") << "m=" << m << " got "
          << table[static_cast<size_t>(m)] << " want " << expected[m];
    }
  }
  rep.checks.push_back({"01 moment table m=0..6", pass, pass ? "" : bad.str()});
}

void check_02_oracle(VerifyReport& rep) {
  Ifs cs = cantor_ifs(1);
  bool pass = true;
  std::ostringstream bad;
  for (int m = 0; m <= 4 && pass; ++m)
    for (int n = 0; n <= 8 && pass; ++n) {
      Scalar lhs = moment_phi_n_oracle(m, n);
      Scalar rhs = phi_n(cs, x_pow(m), cantor_c(), n);
      if (lhs != rhs) {
        pass = false;
        bad << "m=" << m << " n=" << n << ": oracle " << lhs << " vs cell sum " << rhs;
      }
    }
  rep.checks.push_back({"02 endpoint-power-sum oracle agrees with cell sums (m<=4, n<=8)", pass,
                        bad.str()});
}

struct TrichotomyCase {
  int k;
  Scalar p;  // cantor parameter of g (and of q in the pair block)
  IntegrationStatus status;
  Scalar estimate_or_ratio;
};

void check_03_trichotomy(VerifyReport& rep) {
  bool pass = true;
  std::ostringstream bad;
  auto run_case = [&](const IntegralResult& r, const TrichotomyCase& tc, const char* label) {
    if (r.status != tc.status) {
      pass = false;
      bad << label << " k=" << tc.k << " param=" << tc.p << ": status " << status_name(r.status)
          << " want " << status_name(tc.status) << "; ";
      return;
    }
    const Scalar& got = tc.status == IntegrationStatus::Converged ? *r.estimate : *r.growth_ratio;
    if (got != tc.estimate_or_ratio) {
      pass = false;
      bad << label << " k=" << tc.k << " param=" << tc.p << ": value " << got << " want "
          << tc.estimate_or_ratio << "; ";
    }
  };

  const TrichotomyCase cases[] = {
      {1, Scalar::ratio(1, 3), IntegrationStatus::Converged, Scalar(0)},
      {1, Scalar::ratio(1, 2), IntegrationStatus::Converged, Scalar(2)},
      {1, Scalar::ratio(3, 4), IntegrationStatus::Diverged, Scalar::ratio(3, 2)},
      {2, Scalar::ratio(1, 5), IntegrationStatus::Converged, Scalar(0)},
      {2, Scalar::ratio(1, 3), IntegrationStatus::Converged, Scalar(2)},
      {2, Scalar::ratio(1, 2), IntegrationStatus::Diverged, Scalar::ratio(3, 2)},
  };
  for (const auto& tc : cases) {
    Ifs cs = cantor_ifs(tc.k);
    run_case(integrate(cs, one(), KFunction::cantor(tc.k, tc.p)), tc, "(1,c)");
  }

  // Same trichotomy for (c_{k,p}, c_{k,q}) over q, generic p: estimates 0/1,
  // same growth ratio when divergent.
  const TrichotomyCase pair_cases[] = {
      {1, Scalar::ratio(1, 3), IntegrationStatus::Converged, Scalar(0)},
      {1, Scalar::ratio(1, 2), IntegrationStatus::Converged, Scalar(1)},
      {1, Scalar::ratio(3, 4), IntegrationStatus::Diverged, Scalar::ratio(3, 2)},
      {2, Scalar::ratio(1, 5), IntegrationStatus::Converged, Scalar(0)},
      {2, Scalar::ratio(1, 3), IntegrationStatus::Converged, Scalar(1)},
      {2, Scalar::ratio(1, 2), IntegrationStatus::Diverged, Scalar::ratio(3, 2)},
  };
  for (const auto& tc : pair_cases) {
    Ifs cs = cantor_ifs(tc.k);
    Scalar p = tc.k == 1 ? Scalar::ratio(2, 5) : Scalar::ratio(1, 4);
    run_case(integrate(cs, KFunction::cantor(tc.k, p), KFunction::cantor(tc.k, tc.p)), tc, "(c,c)");
  }
  rep.checks.push_back({"03 integrability trichotomy for (1,c_{k,p}) and (c_{k,p},c_{k,q})", pass,
                        bad.str()});
}

void check_04_gap_closed_form(VerifyReport& rep) {
  bool pass = true;
  std::ostringstream bad;
  const Scalar ps[] = {Scalar::ratio(1, 4), Scalar::ratio(2, 5)};
  const Scalar qs[] = {Scalar::ratio(1, 5), Scalar::ratio(1, 2), Scalar::ratio(3, 5)};
  for (int k : {1, 2}) {
    Ifs cs = cantor_ifs(k);
    for (const Scalar& p : ps)
      for (const Scalar& q : qs)
        for (int n = 1; n <= 6 && pass; ++n) {
          Scalar got = psi_n(cs, KFunction::cantor(k, p), KFunction::cantor(k, q), n);
          // ((1-q)/k - q) q^{n-1} k (k+1)^{n-1} over length-(n-1) words.
          Scalar want = ((Scalar(1) - q) / Scalar(k) - q) * q.pow_int(n - 1) * Scalar(k) *
                        Scalar(k + 1).pow_int(n - 1);
          if (got != want) {
            pass = false;
            bad << "k=" << k << " p=" << p << " q=" << q << " n=" << n << ": " << got << " vs "
                << want;
          }
        }
  }
  rep.checks.push_back(
      {"04 gap sums psi_n(c_{k,p},c_{k,q}) = ((1-q)/k - q) q^(n-1) k (k+1)^(n-1)", pass, bad.str()});
}

void check_05_step(VerifyReport& rep) {
  Ifs cs = cantor_ifs(1);
  KFunction h = KFunction::step(Scalar::ratio(1, 3));
  bool pass = true;
  std::ostringstream bad;
  for (int n = 0; n <= 10; ++n) {
    Scalar v = phi_n(cs, h, h, n);
    if (v != Scalar(1)) {
      pass = false;
      bad << "n=" << n << ": " << v << "; ";
    }
  }
  IntegralResult r = integrate(cs, h, h);
  if (r.status != IntegrationStatus::Converged || *r.estimate != Scalar(1)) {
    pass = false;
    bad << "integrate: " << status_name(r.status);
  }
  rep.checks.push_back({"05 step-function self-integral phi_n(h,h) = 1 (n<=10)", pass, bad.str()});
}

KFunction random_kfunction(std::mt19937& rng, int depth) {
  auto rnd_rat = [&] {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return Scalar::ratio(num(rng), den(rng));
  };
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 2);
  switch (pick(rng)) {
    case 0: return KFunction::constant(rnd_rat());
    case 1: return KFunction::identity();
    case 2: {
      std::uniform_int_distribution<int> num(1, 8);
      int n = num(rng);
      return KFunction::cantor(1, Scalar::ratio(n, 9));
    }
    case 3: return KFunction::sum(random_kfunction(rng, depth - 1), random_kfunction(rng, depth - 1));
    case 4:
      return KFunction::product(random_kfunction(rng, depth - 1), random_kfunction(rng, depth - 1));
    case 5: return KFunction::scale(rnd_rat(), random_kfunction(rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> ex(0, 3);
      return KFunction::power(random_kfunction(rng, depth - 1), ex(rng));
    }
  }
}

void check_06_parts(VerifyReport& rep) {
  Ifs cs = cantor_ifs(1);
  std::mt19937 rng(20240811);
  bool pass = true;
  std::ostringstream bad;
  std::uniform_int_distribution<int> level(1, 6);
  for (int i = 0; i < 100 && pass; ++i) {
    KFunction f = random_kfunction(rng, 2);
    KFunction g = random_kfunction(rng, 2);
    int n = level(rng);
    Scalar d = parts_defect(cs, f, g, n);
    if (!d.is_zero()) {
      pass = false;
      bad << "pair " << i << " n=" << n << ": defect " << d << "; ";
    }
  }
  Scalar exact = poly_cantor_integral(1, 1);
  if (exact != Scalar::ratio(3, 4)) {
    pass = false;
    bad << "poly-cantor value " << exact << " want 3/4; ";
  }
  // Numeric witness at depth 16 in float mode.
  Ifs cs_f = to_float(cs);
  KFunction xf = KFunction::identity();
  KFunction gcf = KFunction::product(KFunction::identity(),
                                     KFunction::cantor(1, Scalar(0.5)));
  Scalar approx = phi_n(cs_f, xf, gcf, 16);
  if (!((approx - Scalar(0.75)).abs() < Scalar(0.01))) {
    pass = false;
    bad << "float witness " << approx << " not near 3/4";
  }
  rep.checks.push_back(
      {"06 integration by parts: defect = 0 (100 random pairs), x against x*c gives 3/4", pass,
       bad.str()});
}

void check_07_substitution(VerifyReport& rep) {
  bool pass = true;
  std::ostringstream bad;
  auto expect = [&](const Scalar& got, const Scalar& want, const char* label) {
    if (got != want) {
      pass = false;
      bad << label << ": " << got << " want " << want << "; ";
    }
  };

  // Cantor set onto the binary interval, identity digits: the pulled-back
  // pair (1, x) integrates to 2 on both sides, level by level.
  {
    SubstitutionMap T = SubstitutionMap::make(cantor_ifs(1), binary_interval_ifs(),
                                              Permutation::identity(2));
    if (T.sign_class() != SignClass::PreservesEnds || !T.well_defined().verified) {
      pass = false;
      bad << "cantor->interval map not verified/preserving; ";
    }
    PullbackResult r = pullback_integral(T, one(), KFunction::identity(), {});
    expect(r.source->estimate.value_or(Scalar(-99)), Scalar(2), "pullback (1,x) value");
    auto shared = std::make_shared<const SubstitutionMap>(T);
    for (int n = 0; n <= 8; ++n) {
      Scalar lhs = phi_n(T.source(), KFunction::pullback(shared, one()),
                         KFunction::pullback(shared, KFunction::identity()), n);
      Scalar rhs = phi_n(T.target(), one(), KFunction::identity(), n);
      if (lhs != rhs) {
        pass = false;
        bad << "level identity (id) n=" << n << "; ";
      }
    }
  }

  // Binary interval onto the unequal-ratio interval: identity digits give 2,
  // flipped digits give -2, per level.
  for (bool flip : {false, true}) {
    Permutation rho = flip ? Permutation({1, 0}) : Permutation::identity(2);
    SubstitutionMap T = SubstitutionMap::make(binary_interval_ifs(), unequal_interval_ifs(), rho);
    if (!T.well_defined().verified) {
      pass = false;
      bad << "interval map (flip=" << flip << ") not verified; ";
      continue;
    }
    Scalar sign = flip ? Scalar(-1) : Scalar(1);
    PullbackResult r = pullback_integral(T, one(), KFunction::identity(), {});
    expect(r.source->estimate.value_or(Scalar(-99)), sign * Scalar(2),
           flip ? "flip value" : "id value");
    auto shared = std::make_shared<const SubstitutionMap>(T);
    for (int n = 0; n <= 8; ++n) {
      Scalar lhs = phi_n(T.source(), KFunction::pullback(shared, one()),
                         KFunction::pullback(shared, KFunction::identity()), n);
      Scalar rhs = phi_n(T.target(), one(), KFunction::identity(), n);
      if (lhs != sign * rhs) {
        pass = false;
        bad << "level identity (flip=" << flip << ") n=" << n << "; ";
      }
    }
  }

  // 5-adic set with the (1 2) digit swap: no universal constant relates the
  // two sides; the two computed ratios must differ.
  {
    SubstitutionMap T = SubstitutionMap::make(cantor_ifs(2), cantor_ifs(2), Permutation({0, 2, 1}));
    if (T.sign_class() != SignClass::Other || !T.well_defined().verified ||
        !T.well_defined().injective_source) {
      pass = false;
      bad << "5-adic swap map not verified/Other; ";
    }
    KFunction g = KFunction::cantor(2, Scalar::ratio(1, 3));
    KFunction h = KFunction::digit_weighted({Scalar(0), Scalar(-1), Scalar(2)}, Scalar::ratio(1, 3));
    PullbackResult rg = pullback_integral(T, one(), g, {});
    PullbackResult rh = pullback_integral(T, one(), h, {});
    expect(rg.source->estimate.value_or(Scalar(-99)), Scalar(1), "swap g source");
    expect(rg.target->estimate.value_or(Scalar(-99)), Scalar(2), "swap g target");
    expect(rh.source->estimate.value_or(Scalar(-99)), Scalar(-1), "swap h source");
    expect(rh.target->estimate.value_or(Scalar(-99)), Scalar(2), "swap h target");
    Scalar ratio_g = *rg.source->estimate / *rg.target->estimate;
    Scalar ratio_h = *rh.source->estimate / *rh.target->estimate;
    if (!(ratio_g != ratio_h)) {
      pass = false;
      bad << "ratios coincide; ";
    }
    expect(ratio_g, Scalar::ratio(1, 2), "ratio g");
    expect(ratio_h, Scalar::ratio(-1, 2), "ratio h");
  }

  rep.checks.push_back({"07 substitution: 2, 2, -2, 1, -1 with per-level sign identity (n<=8)",
                        pass, bad.str()});
}

void check_08_term_by_term(VerifyReport& rep) {
  Ifs cs = cantor_ifs(1);
  // 08a: squared prefactor 2(1-q)^2 (2q)^n.
  {
    bool pass = true;
    std::ostringstream bad;
    for (int m = 1; m <= 5; ++m)
      for (int n = 0; n <= 8; ++n) {
        Scalar q = Scalar::ratio(m, 2 * m + 1);
        Scalar got = psi_n(cs, one(), KFunction::cantor(1, q), n + 1);
        Scalar want = Scalar(2) * (Scalar(1) - q).pow_int(2) * (Scalar(2) * q).pow_int(n);
        if (got != want) {
          if (pass)
            bad << "first mismatch m=" << m << " n=" << n << ": " << got << " vs " << want;
          pass = false;
        }
      }
    rep.checks.push_back(
        {"08a term-by-term family: psi_{n+1}(1,c_{1,q}) = 2(1-q)^2 (2q)^n, q=m/(2m+1)", pass,
         bad.str()});
  }
  // 08b: prefactor 2(1-2q), plus the integral limits.
  {
    bool pass = true;
    std::ostringstream bad;
    for (int m = 1; m <= 5; ++m)
      for (int n = 0; n <= 8; ++n) {
        Scalar q = Scalar::ratio(m, 2 * m + 1);
        Scalar got = psi_n(cs, one(), KFunction::cantor(1, q), n + 1);
        Scalar want = Scalar(2) * (Scalar(1) - Scalar(2) * q) * (Scalar(2) * q).pow_int(n);
        if (got != want) {
          pass = false;
          bad << "m=" << m << " n=" << n << "; ";
        }
      }
    TermByTermReport t = term_by_term_demo(5, 8);
    for (const auto& e : t.entries)
      if (e.status != IntegrationStatus::Converged || !e.integral.is_zero() ||
          !e.psi_form_verified) {
        pass = false;
        bad << "member m=" << e.m << " did not integrate to 0; ";
      }
    if (t.limit_integral != Scalar(2) || !t.limits_mismatch) {
      pass = false;
      bad << "limit pair gave " << t.limit_integral;
    }
    rep.checks.push_back(
        {"08b term-by-term family: psi_{n+1}(1,c_{1,q}) = 2(1-2q)(2q)^n; members 0, limit pair 2",
         pass, bad.str()});
  }
}

void check_09_vanishing(VerifyReport& rep) {
  Ifs cs = cantor_ifs(1);
  KFunction g = KFunction::cantor(1, Scalar::ratio(1, 3));
  HolderData hd = cantor_holder_data({1, Scalar::ratio(1, 3)});
  bool pass = hd.alpha == Scalar(1);
  std::ostringstream bad;
  if (!pass) bad << "exponent " << hd.alpha << " not exactly 1; ";
  for (int n = 0; n <= 10; ++n) {
    Scalar bound = vanishing_bound(cs, Scalar(1), hd, n);
    Scalar val = phi_n(cs, one(), g, n).abs();
    if (!(val <= bound)) {
      pass = false;
      bad << "n=" << n << ": |phi|=" << val << " > bound " << bound << "; ";
    }
    if (n > 0) {
      Scalar prev = vanishing_bound(cs, Scalar(1), hd, n - 1);
      if (bound / prev != Scalar::ratio(2, 3)) {
        pass = false;
        bad << "bound ratio at n=" << n << " is " << (bound / prev) << "; ";
      }
    }
  }
  rep.checks.push_back({"09 vanishing bound dominates |phi_n(1,c_{1,1/3})| with exact ratio 2/3",
                        pass, bad.str()});
}

void check_10_classical(VerifyReport& rep) {
  KFunction f = KFunction::identity();
  KFunction g = x_pow(2);
  CorrespondenceReport r =
      interval_correspondence_check(f, g, 14, Scalar::ratio(1, 1000), /*float_mode=*/true);
  Scalar err = (r.phi_value - Scalar::ratio(4, 3).to_float()).abs();
  bool pass = err < Scalar::ratio(1, 1000) && r.within_tol;
  std::ostringstream det;
  det << "phi_14 = " << r.phi_value << ", |phi - 4/3| = " << err
      << ", |phi - 2*stieltjes| = " << r.abs_difference;
  rep.checks.push_back({"10 classical correspondence: phi_14(x, x^2) near 4/3 (tol 1e-3)", pass,
                        det.str()});
}

void check_11_subdivision(VerifyReport& rep) {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 12);
  auto rnd = [&] { return Scalar::ratio(num(rng), den(rng)); };
  bool pass = true;
  std::ostringstream bad;
  for (int i = 0; i < 1000; ++i) {
    Scalar fa = rnd(), fx = rnd(), fb = rnd(), ga = rnd(), gx = rnd(), gb = rnd();
    Scalar lhs = subdivision_defect(fa, fx, fb, ga, gx, gb);
    Scalar rhs = (fx - fa) * (gb - gx) - (fb - fx) * (gx - ga);
    if (lhs != rhs) {
      pass = false;
      bad << "triple " << i << ": " << lhs << " vs " << rhs;
      break;
    }
  }
  rep.checks.push_back({"11 subdivision identity on 1000 random rational triples", pass, bad.str()});
}

void check_12_determinism(VerifyReport& rep) {
  int saved = worker_count();
  set_worker_count(1);
  std::string run1 = render(run_core_checks());
  std::string run2 = render(run_core_checks());
  set_worker_count(8);
  std::string run8 = render(run_core_checks());
  set_worker_count(saved);
  bool pass = run1 == run2 && run1 == run8;
  rep.checks.push_back({"12 determinism: repeated runs and 1 vs 8 workers byte-identical", pass,
                        pass ? "" : "outputs differ"});
}

}  // namespace

VerifyReport run_core_checks() {
  VerifyReport rep;
  check_01_moments(rep);
  check_02_oracle(rep);
  check_03_trichotomy(rep);
  check_04_gap_closed_form(rep);
  check_05_step(rep);
  check_06_parts(rep);
  check_07_substitution(rep);
  check_08_term_by_term(rep);
  check_09_vanishing(rep);
  check_10_classical(rep);
  check_11_subdivision(rep);
  return rep;
}

VerifyReport run_verification() {
  VerifyReport rep = run_core_checks();
  check_12_determinism(rep);
  return rep;
}

}  // namespace fy
