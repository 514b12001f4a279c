#include "fy/integrator.hpp"

#include <cmath>
#include <vector>

#include "fy/errors.hpp"
#include "fy/parallel.hpp"

namespace fy {

Scalar trace_term(const Scalar& f_a, const Scalar& f_b, const Scalar& g_a, const Scalar& g_b) {
  return (f_a + f_b) * (g_b - g_a);
}

Scalar subdivision_defect(const Scalar& f_a, const Scalar& f_x, const Scalar& f_b,
                          const Scalar& g_a, const Scalar& g_x, const Scalar& g_b) {
  return trace_term(f_a, f_x, g_a, g_x) + trace_term(f_x, f_b, g_x, g_b) -
         trace_term(f_a, f_b, g_a, g_b);
}

const char* status_name(IntegrationStatus s) noexcept {
  switch (s) {
    case IntegrationStatus::Converged: return "Converged";
    case IntegrationStatus::Diverged: return "Diverged";
    case IntegrationStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

Scalar ConvergenceConfig::default_tol() { return Scalar::ratio(1, BigInt("10000000000")); }

namespace {

// Sums leaf(word digits) over all length-n words in lexicographic order with
// a thread-count-independent chunk schedule.
template <typename LeafFn>
Scalar level_sum(const Ifs& ifs, int n, std::uint64_t max_words, LeafFn&& leaf) {
  const std::uint64_t count = word_count(ifs.map_count(), n, max_words);
  auto partial = [&](std::uint64_t lo, std::uint64_t hi) {
    CompensatedSum acc;
    std::vector<int> digits(static_cast<size_t>(n));
    if (lo < hi) decode_word(lo, ifs.map_count(), digits);
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (i != lo) {
        for (int d = n - 1; d >= 0; --d) {
          if (++digits[static_cast<size_t>(d)] < ifs.map_count()) break;
          digits[static_cast<size_t>(d)] = 0;
        }
      }
      acc.add(leaf(std::span<const int>(digits)));
    }
    return acc;
  };
  CompensatedSum total = chunked_reduce<CompensatedSum>(
      count, partial, [](CompensatedSum& a, const CompensatedSum& b) { a.merge(b); });
  return total.value();
}

}  // namespace

Scalar phi_n(const Ifs& ifs, const KFunction& f, const KFunction& g, int n, const SumOptions& opts) {
  if (n < 0) raise(Errc::ParamOutOfRange, "negative level");
  f.bind_check(ifs);
  g.bind_check(ifs);
  const int last = ifs.map_count() - 1;
  return level_sum(ifs, n, opts.max_words, [&](std::span<const int> w) {
    return trace_term(f.eval(ifs, w, 0), f.eval(ifs, w, last),
                      g.eval(ifs, w, 0), g.eval(ifs, w, last));
  });
}

Scalar psi_n(const Ifs& ifs, const KFunction& f, const KFunction& g, int n, const SumOptions& opts) {
  if (n < 1) raise(Errc::ParamOutOfRange, "gap sums start at level 1");
  f.bind_check(ifs);
  g.bind_check(ifs);
  const int N = ifs.map_count();
  const int last = N - 1;
  return level_sum(ifs, n - 1, opts.max_words, [&](std::span<const int> w) {
    // Gap l of this word: left endpoint b_{(w,l)}, right endpoint a_{(w,l+1)}.
    std::vector<int> child(w.begin(), w.end());
    child.push_back(0);
    Scalar acc(0);
    for (int l = 0; l < N - 1; ++l) {
      child.back() = l;
      Scalar fl = f.eval(ifs, child, last), gl = g.eval(ifs, child, last);
      child.back() = l + 1;
      Scalar fr = f.eval(ifs, child, 0), gr = g.eval(ifs, child, 0);
      acc += trace_term(fl, fr, gl, gr);
    }
    return acc;
  });
}

Scalar vanishing_bound(const Ifs& ifs, const Scalar& sup_f, const HolderData& holder_g, int n) {
  Scalar width = ifs.interval().width();
  bool integral = holder_g.alpha.is_exact() && holder_g.alpha.denominator() == 1;
  Scalar width_pow = integral
                         ? width.pow_int(holder_g.alpha.numerator().convert_to<long long>())
                         : Scalar(std::pow(width.to_double(), holder_g.alpha.to_double()));
  return Scalar(2) * width_pow * sup_f * holder_g.seminorm *
         ratio_power_sum(ifs, holder_g.alpha).pow_int(n);
}

Scalar tail_bound(const Ifs& ifs, const HolderData& holder_f, const HolderData& holder_g, int n) {
  Scalar sigma = ratio_power_sum(ifs, holder_f.alpha + holder_g.alpha);
  if (!(sigma < Scalar(1)))
    raise(Errc::ExponentTooSmall,
          "alpha + beta does not exceed the similarity dimension (sum r^(a+b) = " + sigma.str() + ")");
  Scalar front = Scalar(2) * holder_f.seminorm * holder_g.seminorm *
                 Scalar(2 * ifs.map_count() + 1) * ifs.interval().width();
  return front * sigma.pow_int(n) / (Scalar(1) - sigma);
}

namespace {

bool ratios_stable(const std::vector<Scalar>& ratios, int window, const Scalar& tol) {
  if (static_cast<int>(ratios.size()) < window) return false;
  size_t begin = ratios.size() - static_cast<size_t>(window);
  bool exact = true;
  for (size_t i = begin; i < ratios.size(); ++i) exact = exact && ratios[i].is_exact();
  if (exact) {
    for (size_t i = begin + 1; i < ratios.size(); ++i)
      if (ratios[i] != ratios[begin]) return false;
    return true;
  }
  Scalar lo = ratios[begin], hi = ratios[begin];
  for (size_t i = begin; i < ratios.size(); ++i) {
    if (ratios[i] < lo) lo = ratios[i];
    if (ratios[i] > hi) hi = ratios[i];
  }
  Scalar scale = hi.abs() > Scalar(1) ? hi.abs() : Scalar(1);
  return hi - lo <= tol * scale;
}

}  // namespace

IntegralResult integrate(const Ifs& ifs, const KFunction& f, const KFunction& g,
                         const ConvergenceConfig& cfg) {
  if (!(cfg.tol > Scalar(0))) raise(Errc::ParamOutOfRange, "tol must be positive");
  if (cfg.consecutive < 1) raise(Errc::ParamOutOfRange, "consecutive must be at least 1");
  if (cfg.holder_f && cfg.holder_g) {
    // Validate now so bound emission cannot fail mid-run.
    (void)tail_bound(ifs, *cfg.holder_f, *cfg.holder_g, 0);
  }

  int max_depth = cfg.max_depth;
  if (max_depth < 0) {
    max_depth = 0;
    std::uint64_t count = 1;
    while (count <= cfg.max_words / static_cast<std::uint64_t>(ifs.map_count())) {
      count *= static_cast<std::uint64_t>(ifs.map_count());
      ++max_depth;
    }
  }
  if (max_depth < 1) raise(Errc::ParamOutOfRange, "max_depth must be at least 1");

  const std::uint64_t coercions_before = Scalar::coercion_count();
  SumOptions sum_opts{cfg.max_words};

  IntegralResult res;
  res.phi_seq.push_back(phi_n(ifs, f, g, 0, sum_opts));
  if (cfg.holder_f && cfg.holder_g) res.bound_seq.emplace();

  std::vector<Scalar> diffs;        // d_n = phi_n - phi_{n-1}
  std::vector<Scalar> diff_ratios;  // d_{n}/d_{n-1} where defined
  std::vector<Scalar> growth;       // |phi_n| / |phi_{n-1}| where defined
  int zero_run = 0, cauchy_run = 0, rising_run = 0;

  for (int n = 1; n <= max_depth; ++n) {
    try {
      res.phi_seq.push_back(phi_n(ifs, f, g, n, sum_opts));
    } catch (const Error& e) {
      // An explicit depth beyond the word budget ends the run as a status.
      if (e.code() == Errc::BudgetExceeded) break;
      throw;
    }
    res.psi_seq.push_back(psi_n(ifs, f, g, n, sum_opts));
    if (res.bound_seq) res.bound_seq->push_back(tail_bound(ifs, *cfg.holder_f, *cfg.holder_g, n));

    const Scalar& cur = res.phi_seq.back();
    const Scalar& prev = res.phi_seq[res.phi_seq.size() - 2];
    Scalar d = cur - prev;
    if (!diffs.empty() && !diffs.back().is_zero() && !d.is_zero())
      diff_ratios.push_back(d / diffs.back());
    else
      diff_ratios.clear();
    diffs.push_back(d);

    zero_run = d.is_zero() ? zero_run + 1 : 0;
    cauchy_run = d.abs() < cfg.tol ? cauchy_run + 1 : 0;
    if (!prev.is_zero() && cur.abs() > prev.abs()) {
      growth.push_back(cur.abs() / prev.abs());
      ++rising_run;
    } else {
      growth.clear();
      rising_run = 0;
    }

    if (zero_run >= cfg.consecutive) {
      res.status = IntegrationStatus::Converged;
      res.estimate = cur;
      break;
    }
    if (static_cast<int>(diff_ratios.size()) >= cfg.consecutive &&
        ratios_stable(diff_ratios, cfg.consecutive, cfg.tol)) {
      Scalar rho = diff_ratios.back();
      if (rho.abs() < Scalar(1)) {
        // Geometric differences: the remaining tail sums to d*rho/(1-rho).
        res.status = IntegrationStatus::Converged;
        res.estimate = cur + d * rho / (Scalar(1) - rho);
        break;
      }
    }
    if (cauchy_run >= cfg.consecutive) {
      res.status = IntegrationStatus::Converged;
      res.estimate = cur;
      break;
    }
    if (rising_run >= cfg.consecutive && cur.abs() > cfg.divergence_threshold &&
        static_cast<int>(growth.size()) >= cfg.consecutive) {
      bool above = true;
      for (size_t i = growth.size() - static_cast<size_t>(cfg.consecutive); i < growth.size(); ++i)
        above = above && growth[i] > Scalar(1) + cfg.tol;
      if (above && ratios_stable(growth, cfg.consecutive, cfg.tol)) {
        res.status = IntegrationStatus::Diverged;
        res.growth_ratio = growth.back();
        break;
      }
    }
  }

  res.coercions = Scalar::coercion_count() - coercions_before;
  return res;
}

}  // namespace fy
