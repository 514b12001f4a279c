#include "fy/identities.hpp"

#include <algorithm>

#include "fy/errors.hpp"

namespace fy {

namespace {

BigInt binomial(int n, int r) {
  BigInt acc = 1;
  for (int i = 0; i < r; ++i) {
    acc *= n - i;
    acc /= i + 1;
  }
  return acc;
}

constexpr int kMaxMoment = 64;

}  // namespace

std::vector<Scalar> moment_table(int max_m) {
  if (max_m < 0 || max_m > kMaxMoment)
    raise(Errc::ParamOutOfRange, "moment order must lie in [0, " + std::to_string(kMaxMoment) + "]");
  std::vector<Scalar> table;
  table.reserve(static_cast<size_t>(max_m) + 1);
  table.push_back(Scalar(2));
  for (int m = 1; m <= max_m; ++m) {
    Scalar s(0);
    Scalar coeff(1);  // (-1/3)^r
    for (int r = 0; r < m; ++r) {
      s += coeff * Scalar(binomial(m, r)) * table[static_cast<size_t>(r)];
      coeff *= Scalar::ratio(-1, 3);
    }
    if (m % 2 == 1) {
      table.push_back(Scalar::ratio(1, 2) * s);
    } else {
      BigInt p3 = BigInt(1);
      for (int i = 0; i < m; ++i) p3 *= 3;
      table.push_back(Scalar::ratio(p3, 2 * (p3 - 1)) * s);
    }
  }
  return table;
}

Scalar moment(int m) { return moment_table(m).back(); }

BoundaryNumerators boundary_numerators(int n) {
  if (n < 0) raise(Errc::ParamOutOfRange, "negative level");
  if (n > 40) raise(Errc::BudgetExceeded, "2^(n+1) boundary numerators exceed the budget");
  std::vector<BigInt> values{0, 1};
  BigInt p3 = 1;
  for (int i = 1; i <= n; ++i) {
    p3 *= 3;
    size_t sz = values.size();
    values.reserve(2 * sz);
    for (size_t j = 0; j < sz; ++j) values.push_back(p3 - values[j]);
  }
  std::sort(values.begin(), values.end());
  return {n, std::move(values)};
}

Scalar moment_phi_n_oracle(int m, int n) {
  if (m < 0) raise(Errc::ParamOutOfRange, "negative moment order");
  BoundaryNumerators bn = boundary_numerators(n);
  BigInt power_sum = 0;
  for (const BigInt& a : bn.values) {
    BigInt t = 1;
    for (int i = 0; i < m; ++i) t *= a;
    power_sum += t;
  }
  BigInt denom = 1;
  for (int i = 0; i < n; ++i) denom *= 2;
  for (int i = 0; i < n * m; ++i) denom *= 3;
  return Scalar::ratio(power_sum, denom);
}

Scalar parts_defect(const Ifs& ifs, const KFunction& f, const KFunction& g, int n,
                    const SumOptions& opts) {
  KFunction one = KFunction::constant(Scalar(1));
  return phi_n(ifs, one, f * g, n, opts) - phi_n(ifs, f, g, n, opts) - phi_n(ifs, g, f, n, opts);
}

Scalar poly_cantor_integral(int l, int m) {
  if (l < 0 || m < 0) raise(Errc::ParamOutOfRange, "negative exponent");
  return moment(l + m);
}

TermByTermReport term_by_term_demo(int m_max, int depth) {
  if (m_max < 1) raise(Errc::ParamOutOfRange, "m_max must be at least 1");
  if (depth < 1) raise(Errc::ParamOutOfRange, "depth must be at least 1");

  Ifs cs = cantor_ifs(1);
  KFunction one = KFunction::constant(Scalar(1));
  TermByTermReport rep;
  rep.sup_tail_at_depth = Scalar(0);

  for (int m = 1; m <= m_max; ++m) {
    TermByTermEntry e;
    e.m = m;
    e.q = Scalar::ratio(m, 2 * m + 1);
    KFunction gm = KFunction::cantor(1, e.q);
    // psi_{n+1}(1, c_{1,q}) = 2(1-2q) (2q)^n.
    e.psi_prefactor = Scalar(2) * (Scalar(1) - Scalar(2) * e.q);
    e.psi_ratio = Scalar(2) * e.q;
    e.psi_form_verified = true;
    for (int n = 0; n < depth; ++n) {
      Scalar expect = e.psi_prefactor * e.psi_ratio.pow_int(n);
      if (psi_n(cs, one, gm, n + 1) != expect) {
        e.psi_form_verified = false;
        break;
      }
    }
    e.tail_at_depth = e.psi_prefactor * e.psi_ratio.pow_int(depth) / (Scalar(1) - e.psi_ratio);
    if (e.tail_at_depth > rep.sup_tail_at_depth) rep.sup_tail_at_depth = e.tail_at_depth;

    IntegralResult r = integrate(cs, one, gm);
    e.status = r.status;
    e.integral = r.estimate.value_or(Scalar(0));
    rep.entries.push_back(std::move(e));
  }

  IntegralResult lim = integrate(cs, one, KFunction::cantor(1, Scalar::ratio(1, 2)));
  rep.limit_integral = lim.estimate.value_or(Scalar(0));
  bool all_zero = true;
  for (const auto& e : rep.entries)
    all_zero = all_zero && e.status == IntegrationStatus::Converged && e.integral.is_zero();
  rep.limits_mismatch = all_zero && rep.limit_integral == Scalar(2);
  return rep;
}

}  // namespace fy
