#include "fy/kfunction.hpp"

#include <cmath>
#include <sstream>

#include "fy/errors.hpp"

namespace fy {

struct KFunction::Node {
  Kind kind = Kind::Const;
  Scalar value;  // Const value, Scale factor, Step threshold, Cantor p, DigitWeighted ratio
  int ipar = 0;  // Power exponent, Cantor k
  std::shared_ptr<const Node> a, b;
  std::vector<Scalar> coeffs;  // DigitWeighted
  std::shared_ptr<const SubstitutionMap> map;  // Pullback
};

namespace {

using Node = KFunction::Node;
using Kind = KFunction::Kind;

std::shared_ptr<const Node> mk(Node n) { return std::make_shared<const Node>(std::move(n)); }

Node node(Kind k, Scalar value = Scalar(0)) {
  Node n;
  n.kind = k;
  n.value = std::move(value);
  return n;
}

bool is_cantor_host(const Ifs& ifs, int k) {
  if (k < 1 || ifs.map_count() != k + 1) return false;
  return ifs == cantor_ifs(k);
}

}  // namespace

KFunction KFunction::constant(Scalar c) { return KFunction(mk(node(Kind::Const, std::move(c)))); }
KFunction KFunction::identity() { return KFunction(mk(node(Kind::Identity))); }

KFunction KFunction::power(KFunction base, int m) {
  if (m < 0) raise(Errc::ParamOutOfRange, "power exponent must be nonnegative");
  Node n = node(Kind::Power);
  n.ipar = m;
  n.a = std::move(base.node_);
  return KFunction(mk(std::move(n)));
}

KFunction KFunction::sum(KFunction a, KFunction b) {
  Node n = node(Kind::Sum);
  n.a = std::move(a.node_);
  n.b = std::move(b.node_);
  return KFunction(mk(std::move(n)));
}

KFunction KFunction::product(KFunction a, KFunction b) {
  Node n = node(Kind::Product);
  n.a = std::move(a.node_);
  n.b = std::move(b.node_);
  return KFunction(mk(std::move(n)));
}

KFunction KFunction::scale(Scalar c, KFunction f) {
  Node n = node(Kind::Scale, std::move(c));
  n.a = std::move(f.node_);
  return KFunction(mk(std::move(n)));
}

KFunction KFunction::cantor(int k, Scalar p) {
  if (k < 1) raise(Errc::ParamOutOfRange, "cantor k must be positive");
  if (!(Scalar(0) < p && p < Scalar(1)))
    raise(Errc::ParamOutOfRange, "cantor p must lie in (0,1), got " + p.str());
  Node n = node(Kind::Cantor, std::move(p));
  n.ipar = k;
  return KFunction(mk(std::move(n)));
}

KFunction KFunction::step(Scalar threshold) {
  return KFunction(mk(node(Kind::Step, std::move(threshold))));
}

KFunction KFunction::digit_weighted(std::vector<Scalar> coeff, Scalar ratio) {
  if (coeff.size() < 2) raise(Errc::ParamOutOfRange, "digit weights need one coefficient per digit");
  if (!(ratio.abs() < Scalar(1)) || ratio.is_zero())
    raise(Errc::MissingTailForm,
          "digit-weighted tail sums require a geometric ratio in (0,1) in absolute value");
  Node n = node(Kind::DigitWeighted, std::move(ratio));
  n.coeffs = std::move(coeff);
  return KFunction(mk(std::move(n)));
}

KFunction KFunction::pullback(std::shared_ptr<const SubstitutionMap> map, KFunction inner) {
  if (!map) raise(Errc::ParamOutOfRange, "null substitution map");
  if (!map->well_defined().verified)
    raise(Errc::NotWellDefined, "pullback through an unverified substitution map");
  Node n = node(Kind::Pullback);
  n.map = std::move(map);
  n.a = std::move(inner.node_);
  return KFunction(mk(std::move(n)));
}

KFunction::Kind KFunction::kind() const { return node_->kind; }

namespace {

void bind_check_node(const Node& n, const Ifs& ifs) {
  switch (n.kind) {
    case Kind::Const:
    case Kind::Identity:
    case Kind::Step:
      return;
    case Kind::Power:
    case Kind::Scale:
      bind_check_node(*n.a, ifs);
      return;
    case Kind::Sum:
    case Kind::Product:
      bind_check_node(*n.a, ifs);
      bind_check_node(*n.b, ifs);
      return;
    case Kind::Cantor:
      if (!is_cantor_host(ifs, n.ipar))
        raise(Errc::IncompatibleIfs,
              "cantor(" + std::to_string(n.ipar) + ",p) requires the " +
                  std::to_string(2 * n.ipar + 1) + "-adic Cantor IFS");
      return;
    case Kind::DigitWeighted:
      if (static_cast<int>(n.coeffs.size()) != ifs.map_count())
        raise(Errc::IncompatibleIfs, "digit weights sized for " + std::to_string(n.coeffs.size()) +
                                         " digits on an IFS with " + std::to_string(ifs.map_count()));
      // Digit series are not functions of the point when distinct addresses
      // collide, so hosts with touching images are refused.
      if (ifs.has_touching())
        raise(Errc::IncompatibleIfs, "digit-weighted functions need an injective coding map");
      return;
    case Kind::Pullback:
      if (!(n.map->source() == ifs))
        raise(Errc::IncompatibleIfs, "pullback source does not match the host IFS");
      bind_check_node(*n.a, n.map->target());
      return;
  }
}

Scalar eval_node(const Node& n, const Ifs& ifs, std::span<const int> prefix, int tail);

Scalar eval_cantor(const Node& n, std::span<const int> prefix, int tail) {
  const int k = n.ipar;
  const Scalar& p = n.value;
  Scalar part(0), pw(1);
  for (int d : prefix) {
    if (d < 0 || d > k) raise(Errc::InvalidDigit, "cantor digit out of range");
    part += Scalar(d) * pw;
    pw *= p;
  }
  // (1-p)/k * partial + tail * p^n / k  (the closed tail sum).
  if (tail < 0 || tail > k) raise(Errc::InvalidDigit, "cantor tail out of range");
  return (Scalar(1) - p) * part / Scalar(k) + Scalar(tail) * pw / Scalar(k);
}

Scalar eval_digit_weighted(const Node& n, std::span<const int> prefix, int tail) {
  const Scalar& r = n.value;
  const int N = static_cast<int>(n.coeffs.size());
  Scalar acc(0), pw = r;  // ratio^i with i starting at 1
  for (int d : prefix) {
    if (d < 0 || d >= N) raise(Errc::InvalidDigit, "digit out of range");
    acc += n.coeffs[static_cast<size_t>(d)] * pw;
    pw *= r;
  }
  if (tail < 0 || tail >= N) raise(Errc::InvalidDigit, "tail digit out of range");
  // sum_{i>n} c_t r^i = c_t r^{n+1} / (1-r)
  acc += n.coeffs[static_cast<size_t>(tail)] * pw / (Scalar(1) - r);
  return acc;
}

Scalar eval_node(const Node& n, const Ifs& ifs, std::span<const int> prefix, int tail) {
  switch (n.kind) {
    case Kind::Const:
      return n.value;
    case Kind::Identity:
      return ifs.point(prefix, tail);
    case Kind::Power:
      return eval_node(*n.a, ifs, prefix, tail).pow_int(n.ipar);
    case Kind::Sum:
      return eval_node(*n.a, ifs, prefix, tail) + eval_node(*n.b, ifs, prefix, tail);
    case Kind::Product:
      return eval_node(*n.a, ifs, prefix, tail) * eval_node(*n.b, ifs, prefix, tail);
    case Kind::Scale:
      return n.value * eval_node(*n.a, ifs, prefix, tail);
    case Kind::Cantor:
      return eval_cantor(n, prefix, tail);
    case Kind::Step:
      return ifs.point(prefix, tail) >= n.value ? Scalar(1) : Scalar(0);
    case Kind::DigitWeighted:
      return eval_digit_weighted(n, prefix, tail);
    case Kind::Pullback: {
      const auto& map = *n.map;
      std::vector<int> mapped(prefix.size());
      map.apply_prefix(prefix, mapped);
      return eval_node(*n.a, map.target(), mapped, map.apply_digit(tail));
    }
  }
  raise(Errc::ParamOutOfRange, "corrupt expression node");
}

Scalar eval_real_node(const Node& n, const Scalar& x) {
  switch (n.kind) {
    case Kind::Const:
      return n.value;
    case Kind::Identity:
      return x;
    case Kind::Power:
      return eval_real_node(*n.a, x).pow_int(n.ipar);
    case Kind::Sum:
      return eval_real_node(*n.a, x) + eval_real_node(*n.b, x);
    case Kind::Product:
      return eval_real_node(*n.a, x) * eval_real_node(*n.b, x);
    case Kind::Scale:
      return n.value * eval_real_node(*n.a, x);
    default:
      raise(Errc::IncompatibleIfs, "only algebraic nodes are defined at arbitrary points");
  }
}

bool algebraic_node(const Node& n) {
  switch (n.kind) {
    case Kind::Const:
    case Kind::Identity:
      return true;
    case Kind::Power:
    case Kind::Scale:
      return algebraic_node(*n.a);
    case Kind::Sum:
    case Kind::Product:
      return algebraic_node(*n.a) && algebraic_node(*n.b);
    default:
      return false;
  }
}

std::string str_node(const Node& n) {
  std::ostringstream os;
  switch (n.kind) {
    case Kind::Const: os << "const(" << n.value << ")"; break;
    case Kind::Identity: os << "x"; break;
    case Kind::Power: os << "(" << str_node(*n.a) << ")^" << n.ipar; break;
    case Kind::Sum: os << str_node(*n.a) << "+" << str_node(*n.b); break;
    case Kind::Product: os << "(" << str_node(*n.a) << ")*(" << str_node(*n.b) << ")"; break;
    case Kind::Scale: os << "scale(" << n.value << "," << str_node(*n.a) << ")"; break;
    case Kind::Cantor: os << "cantor(" << n.ipar << "," << n.value << ")"; break;
    case Kind::Step: os << "step(" << n.value << ")"; break;
    case Kind::DigitWeighted: {
      os << "digitw([";
      for (size_t i = 0; i < n.coeffs.size(); ++i) os << (i ? "," : "") << n.coeffs[i];
      os << "];" << n.value << ")";
      break;
    }
    case Kind::Pullback:
      os << "pullback([";
      for (int i = 0; i < n.map->rho().size(); ++i) os << (i ? "," : "") << n.map->rho()(i);
      os << "]," << str_node(*n.a) << ")";
      break;
  }
  return os.str();
}

}  // namespace

void KFunction::bind_check(const Ifs& ifs) const { bind_check_node(*node_, ifs); }

Scalar KFunction::eval(const Ifs& ifs, const PointAddress& p) const {
  return eval_node(*node_, ifs, p.prefix.digits(), p.tail);
}

Scalar KFunction::eval(const Ifs& ifs, std::span<const int> prefix, int tail) const {
  return eval_node(*node_, ifs, prefix, tail);
}

Scalar KFunction::eval_real(const Scalar& x) const { return eval_real_node(*node_, x); }

bool KFunction::algebraic() const { return algebraic_node(*node_); }

std::string KFunction::str() const { return str_node(*node_); }

Scalar cantor_endpoint_delta(const CantorParams& params, const Word& w) {
  if (!(Scalar(0) < params.p && params.p < Scalar(1)))
    raise(Errc::ParamOutOfRange, "p must lie in (0,1)");
  for (int i = 0; i < w.size(); ++i)
    if (w[i] < 0 || w[i] > params.k) raise(Errc::IncompatibleIfs, "word digit exceeds k");
  return params.p.pow_int(w.size());
}

HolderExponent holder_exponent(const CantorParams& params) {
  if (!(Scalar(0) < params.p && params.p < Scalar(1)))
    raise(Errc::ParamOutOfRange, "p must lie in (0,1)");
  Scalar base(2 * params.k + 1);
  Scalar arg = params.p.inverse();
  if (auto e = arg.integer_log(base)) return {Scalar(*e), base, arg};
  return {Scalar(std::log(arg.to_double()) / std::log(base.to_double())), base, arg};
}

HolderData cantor_holder_data(const CantorParams& params) {
  return {holder_exponent(params).value, params.p.inverse(), Scalar(1)};
}

Scalar cantor_uniform_distance_bound(int k, const Scalar& p, const Scalar& p0, const Scalar& eps0) {
  if (k < 1) raise(Errc::ParamOutOfRange, "k must be positive");
  if (!(eps0 > Scalar(0) && eps0 < p0 && p0 < Scalar(1) - eps0))
    raise(Errc::ParamOutOfRange, "need 0 < eps0 < p0 < 1 - eps0");
  if (!((p - p0).abs() < eps0)) raise(Errc::ParamOutOfRange, "need |p - p0| < eps0");
  Scalar denom = Scalar(1) - (p0 + eps0);
  return Scalar(2) * (p - p0).abs() / (denom * denom);
}

}  // namespace fy
