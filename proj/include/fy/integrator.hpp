#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fy/ifs.hpp"
#include "fy/kfunction.hpp"

namespace fy {

/// Trace attached to an interval with boundary values (f_a, f_b), (g_a, g_b):
/// (f(a) + f(b)) * (g(b) - g(a)).
Scalar trace_term(const Scalar& f_a, const Scalar& f_b, const Scalar& g_a, const Scalar& g_b);

/// Tr_A + Tr_B - Tr_I for the split [a,b] = [a,x] u [x,b]; equals
/// df_A*dg_B - df_B*dg_A.
Scalar subdivision_defect(const Scalar& f_a, const Scalar& f_x, const Scalar& f_b,
                          const Scalar& g_a, const Scalar& g_x, const Scalar& g_b);

struct SumOptions {
  std::uint64_t max_words = default_word_cap();
};

/// Level-n cell sum: trace terms over every length-n word's interval, in
/// lexicographic word order (float mode uses compensated summation over a
/// fixed chunk grid, so results do not depend on the worker count).
Scalar phi_n(const Ifs& ifs, const KFunction& f, const KFunction& g, int n,
             const SumOptions& opts = {});

/// Level-n gap sum (n >= 1): trace terms over the N-1 gaps of every
/// length-(n-1) word's interval.
Scalar psi_n(const Ifs& ifs, const KFunction& f, const KFunction& g, int n,
             const SumOptions& opts = {});

enum class IntegrationStatus { Converged, Diverged, BudgetExhausted };
const char* status_name(IntegrationStatus s) noexcept;

struct ConvergenceConfig {
  Scalar tol = default_tol();       // Cauchy / ratio-stability tolerance
  int consecutive = 3;              // successive levels a criterion must hold
  int max_depth = -1;               // -1: deepest n with N^n <= max_words
  std::uint64_t max_words = default_word_cap();
  Scalar divergence_threshold = Scalar(16);  // |phi_n| must exceed this to flag divergence
  std::optional<HolderData> holder_f, holder_g;

  static Scalar default_tol();  // 1/10^10, exact
};

struct IntegralResult {
  std::vector<Scalar> phi_seq;  // phi_0, phi_1, ..., phi_n
  std::vector<Scalar> psi_seq;  // psi_1, ..., psi_n
  IntegrationStatus status = IntegrationStatus::BudgetExhausted;
  std::optional<Scalar> estimate;      // present iff Converged
  std::optional<Scalar> growth_ratio;  // present iff Diverged
  std::optional<std::vector<Scalar>> bound_seq;  // per-level tail bounds when Holder data given
  std::uint64_t coercions = 0;  // exact->float coercions observed during the run

  int depth() const { return static_cast<int>(phi_seq.size()) - 1; }
};

/// Iterates the level sums until the sequence resolves:
///  - differences exactly zero for `consecutive` levels -> Converged, the
///    stable value;
///  - difference ratios exactly equal with |ratio| < 1 for `consecutive`
///    levels (exact mode) -> Converged, the geometric limit
///    phi_n + d_n*ratio/(1-ratio);
///  - |differences| < tol for `consecutive` levels -> Converged, last phi_n;
///  - |phi| rising above the divergence threshold with the growth ratio
///    stable above 1 + tol -> Diverged, fitted ratio reported;
///  - otherwise the depth/word budget ends the run as BudgetExhausted.
/// With Holder data the per-level tail bound is emitted alongside.
IntegralResult integrate(const Ifs& ifs, const KFunction& f, const KFunction& g,
                         const ConvergenceConfig& cfg = {});

/// 2 (b-a)^beta ||f|| |g|_beta (sum_s r_s^beta)^n; dominates |phi_n| for
/// continuous f and beta-Holder g.
Scalar vanishing_bound(const Ifs& ifs, const Scalar& sup_f, const HolderData& holder_g, int n);

/// 2 |f|_a |g|_b (2N+1) (b-a) sigma^n / (1-sigma) with sigma = sum_s r_s^{a+b};
/// requires sigma < 1 (i.e. a+b above the similarity dimension).
Scalar tail_bound(const Ifs& ifs, const HolderData& holder_f, const HolderData& holder_g, int n);

}  // namespace fy
