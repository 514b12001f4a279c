#pragma once

#include <vector>

#include "fy/integrator.hpp"

namespace fy {

/// The integral of x^m against the Cantor function on the middle-third
/// Cantor set, as an exact rational. m = 0 gives 2; higher m follow the
/// binomial recursion (odd/even prefactor split).
Scalar moment(int m);
std::vector<Scalar> moment_table(int max_m);

/// Numerators over 3^n of the level-n cell endpoints of the middle-third
/// Cantor set: A_0 = {0,1}, A_n = A_{n-1} u {3^n - a}.
struct BoundaryNumerators {
  int level = 0;
  std::vector<BigInt> values;  // sorted ascending, 2^{n+1} entries
};
BoundaryNumerators boundary_numerators(int n);

/// Independent route to the level sums: S_n^{(m)} / (2^n 3^{nm}) with
/// S_n^{(m)} the m-th power sum over the boundary numerators. Must agree
/// exactly with phi_n(CS, x^m, c, n).
Scalar moment_phi_n_oracle(int m, int n);

/// phi_n(1, f*g) - phi_n(f,g) - phi_n(g,f); identically zero at every level.
Scalar parts_defect(const Ifs& ifs, const KFunction& f, const KFunction& g, int n,
                    const SumOptions& opts = {});

/// The integral of (x^l, x^m c) on the middle-third Cantor set via the parts
/// identity: the Lipschitz companion terms vanish, leaving moment(l+m).
Scalar poly_cantor_integral(int l, int m);

struct TermByTermEntry {
  int m = 0;
  Scalar q;                 // m/(2m+1)
  Scalar psi_prefactor;     // psi_{n+1}(1, c_{1,q}) = prefactor * ratio^n
  Scalar psi_ratio;         // 2q = 2m/(2m+1)
  bool psi_form_verified = false;  // exact match of the closed form
  Scalar tail_at_depth;     // sum_{n >= depth} psi_{n+1} = prefactor*ratio^depth/(1-ratio)
  IntegrationStatus status = IntegrationStatus::BudgetExhausted;
  Scalar integral;          // 0 for every m
};

struct TermByTermReport {
  std::vector<TermByTermEntry> entries;
  Scalar limit_integral;       // integral of the limit pair (1, c_{1,1/2}) = 2
  Scalar sup_tail_at_depth;    // sup over m of the psi tails: does not vanish with m
  bool limits_mismatch = false;  // lim_m integral(m) = 0 differs from the limit pair's 2
};

/// The family f_m = 1, g_m = c_{1, m/(2m+1)}: every member has a convergent
/// gap series (geometric, ratio 2m/(2m+1) < 1) yet the convergence is not
/// uniform in m, and the member integrals (all 0) miss the limit pair's 2.
TermByTermReport term_by_term_demo(int m_max, int depth);

}  // namespace fy
