#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fy/ifs.hpp"
#include "fy/substitution.hpp"

namespace fy {

struct CantorParams {
  int k = 1;
  Scalar p;  // 0 < p < 1
};

/// Immutable expression tree for functions on the self-similar set, evaluable
/// exactly at point addresses. Functions are never evaluated at arbitrary
/// reals except through the algebraic-node restriction used by the classical
/// Stieltjes oracle.
class KFunction {
 public:
  enum class Kind { Const, Identity, Power, Sum, Product, Scale, Cantor, Step, DigitWeighted, Pullback };

  static KFunction constant(Scalar c);
  static KFunction identity();
  static KFunction power(KFunction base, int m);
  static KFunction sum(KFunction a, KFunction b);
  static KFunction product(KFunction a, KFunction b);
  static KFunction scale(Scalar c, KFunction f);
  /// Generalized Cantor function on the (2k+1)-adic Cantor set:
  /// digits s_i  ->  (1-p)/k * sum s_i p^{i-1}.
  static KFunction cantor(int k, Scalar p);
  /// 0 strictly below the threshold, 1 at and above it.
  static KFunction step(Scalar threshold);
  /// sum_i coeff[s_i] * ratio^i over the address digits; the geometric ratio
  /// (|ratio| < 1) is the closed form that makes constant tails summable.
  static KFunction digit_weighted(std::vector<Scalar> coeff, Scalar ratio);
  static KFunction pullback(std::shared_ptr<const SubstitutionMap> map, KFunction inner);

  Kind kind() const;

  /// Structural compatibility with the host IFS (Cantor nodes demand the
  /// matching (2k+1)-adic IFS; digit-weighted nodes refuse hosts whose coding
  /// map identifies addresses; pullbacks must depart from the host). Throws.
  void bind_check(const Ifs& ifs) const;

  /// Exact value at pi(address).
  Scalar eval(const Ifs& ifs, const PointAddress& p) const;
  Scalar eval(const Ifs& ifs, std::span<const int> prefix, int tail) const;

  /// Evaluation at an arbitrary point, defined for algebraic nodes only
  /// (Const/Identity/Power/Sum/Product/Scale); the classical oracle needs it.
  Scalar eval_real(const Scalar& x) const;
  bool algebraic() const;

  std::string str() const;

  KFunction operator+(const KFunction& o) const { return sum(*this, o); }
  KFunction operator*(const KFunction& o) const { return product(*this, o); }

  struct Node;

 private:
  explicit KFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// c_{k,p}(b_w) - c_{k,p}(a_w) = p^|w| on the matching Cantor IFS.
Scalar cantor_endpoint_delta(const CantorParams& params, const Word& w);

struct HolderExponent {
  Scalar value;    // exact integer when (2k+1)^e = 1/p, else float
  Scalar base;     // 2k+1
  Scalar argument; // 1/p
};

/// Holder exponent log_{2k+1}(1/p) of c_{k,p}.
HolderExponent holder_exponent(const CantorParams& params);

/// HolderData for c_{k,p}: exponent as above, seminorm 1/p, sup norm 1.
HolderData cantor_holder_data(const CantorParams& params);

/// Proof bound 2|p-p0| / (1-(p0+eps0))^2 on sup |c_{k,p} - c_{k,p0}|,
/// requiring eps0 < p0 < 1-eps0 and |p-p0| < eps0.
Scalar cantor_uniform_distance_bound(int k, const Scalar& p, const Scalar& p0, const Scalar& eps0);

}  // namespace fy
