#include "fy/substitution.hpp"

#include <algorithm>

#include "fy/errors.hpp"
#include "fy/integrator.hpp"
#include "fy/kfunction.hpp"

namespace fy {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<size_t>(v)])
      raise(Errc::ParamOutOfRange, "permutation image is not a bijection");
    seen[static_cast<size_t>(v)] = true;
  }
  if (image_.empty()) raise(Errc::ParamOutOfRange, "empty permutation");
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::parse(const std::string& csv) {
  std::vector<int> im;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) raise(Errc::ParseError, "bad permutation literal '" + csv + "'");
    im.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return Permutation(std::move(im));
}

int Permutation::operator()(int s) const {
  if (s < 0 || s >= size()) raise(Errc::InvalidDigit, "digit outside the permutation domain");
  return image_[static_cast<size_t>(s)];
}

Word Permutation::operator()(const Word& w) const {
  std::vector<int> out(static_cast<size_t>(w.size()));
  for (int i = 0; i < w.size(); ++i) out[static_cast<size_t>(i)] = (*this)(w[i]);
  return Word(std::move(out));
}

const char* sign_class_name(SignClass s) noexcept {
  switch (s) {
    case SignClass::PreservesEnds: return "PreservesEnds";
    case SignClass::FlipsEnds: return "FlipsEnds";
    case SignClass::Other: return "Other";
  }
  return "?";
}

WellDefinedness check_well_defined(const Ifs& source, const Ifs& target, const Permutation& rho,
                                   int depth) {
  if (source.map_count() != target.map_count() || rho.size() != source.map_count())
    raise(Errc::ParamOutOfRange, "source, target and permutation must share one alphabet");
  WellDefinedness wd;
  wd.depth = depth;

  std::vector<int> touching;
  for (int l = 0; l + 1 < source.map_count(); ++l)
    if (source.touching(l)) touching.push_back(l);
  if (touching.empty()) {
    wd.verified = true;
    wd.injective_source = true;
    return wd;
  }

  const int last = source.map_count() - 1;
  for (int m = 0; m < depth; ++m) {
    WordEnumerator en(source.map_count(), m);
    while (auto w = en.next()) {
      for (int l : touching) {
        // pi identifies (w l, tail last) with (w l+1, tail 0).
        PointAddress left{w->child(l), last};
        PointAddress right{w->child(l + 1), 0};
        PointAddress lim{rho(left.prefix), rho(left.tail)};
        PointAddress rim{rho(right.prefix), rho(right.tail)};
        if (target.point(lim) != target.point(rim)) {
          wd.verified = false;
          wd.witness = std::make_pair(left, right);
          return wd;
        }
      }
    }
  }
  wd.verified = true;
  return wd;
}

SubstitutionMap SubstitutionMap::make(Ifs source, Ifs target, Permutation rho, int check_depth) {
  if (source.map_count() != target.map_count())
    raise(Errc::ParamOutOfRange, "source and target need equal alphabet sizes");
  const int last = source.map_count() - 1;
  SignClass sign = SignClass::Other;
  if (rho(0) == 0 && rho(last) == last)
    sign = SignClass::PreservesEnds;
  else if (rho(0) == last && rho(last) == 0)
    sign = SignClass::FlipsEnds;
  WellDefinedness wd = check_well_defined(source, target, rho, check_depth);
  return SubstitutionMap(std::move(source), std::move(target), std::move(rho), sign, std::move(wd));
}

int SubstitutionMap::apply_digit(int d) const { return rho_(d); }

void SubstitutionMap::apply_prefix(std::span<const int> in, std::span<int> out) const {
  for (size_t i = 0; i < in.size(); ++i) out[i] = rho_(in[i]);
}

PointAddress SubstitutionMap::apply(const PointAddress& p) const {
  if (!wd_.verified) raise(Errc::NotWellDefined, "substitution map failed verification");
  return PointAddress{rho_(p.prefix), rho_(p.tail)};
}

bool SubstitutionMap::operator==(const SubstitutionMap& o) const {
  return source_ == o.source_ && target_ == o.target_ && rho_ == o.rho_;
}

IntegralResult* PullbackResult::operator->() { return source.get(); }

PullbackResult pullback_integral(const SubstitutionMap& map, const KFunction& f, const KFunction& g,
                                 const ConvergenceConfig& cfg) {
  if (!map.well_defined().verified)
    raise(Errc::NotWellDefined, "substitution map failed verification");
  auto shared = std::make_shared<const SubstitutionMap>(map);
  KFunction pf = KFunction::pullback(shared, f);
  KFunction pg = KFunction::pullback(shared, g);

  PullbackResult out;
  out.sign = map.sign_class();
  out.source = std::make_shared<IntegralResult>(integrate(map.source(), pf, pg, cfg));
  out.target = std::make_shared<IntegralResult>(integrate(map.target(), f, g, cfg));

  if (out.sign != SignClass::Other) {
    // The sign rule holds level by level; verify it on every level both runs
    // reached.
    Scalar sgn = out.sign == SignClass::PreservesEnds ? Scalar(1) : Scalar(-1);
    int levels = static_cast<int>(std::min(out.source->phi_seq.size(), out.target->phi_seq.size()));
    for (int n = 0; n < levels; ++n) {
      if (out.source->phi_seq[static_cast<size_t>(n)] !=
          sgn * out.target->phi_seq[static_cast<size_t>(n)])
        raise(Errc::NotWellDefined,
              "per-level substitution identity failed at level " + std::to_string(n));
    }
    out.identity_checked_depth = levels - 1;
  }
  return out;
}

}  // namespace fy
