#include "fy/young.hpp"

#include "fy/errors.hpp"

namespace fy {

Partition Partition::uniform(const Interval& iv, int cells, TagRule rule) {
  if (cells < 1) raise(Errc::ParamOutOfRange, "a partition needs at least one cell");
  Partition p;
  p.points.reserve(static_cast<size_t>(cells) + 1);
  p.tags.reserve(static_cast<size_t>(cells));
  Scalar width = iv.width();
  for (int r = 0; r <= cells; ++r)
    p.points.push_back(iv.a + width * Scalar(r) / Scalar(cells));
  for (int r = 0; r < cells; ++r) {
    const Scalar& lo = p.points[static_cast<size_t>(r)];
    const Scalar& hi = p.points[static_cast<size_t>(r) + 1];
    switch (rule) {
      case TagRule::Left: p.tags.push_back(lo); break;
      case TagRule::Midpoint: p.tags.push_back((lo + hi) / Scalar(2)); break;
      case TagRule::Right: p.tags.push_back(hi); break;
    }
  }
  return p;
}

void Partition::validate() const {
  if (points.size() < 2 || tags.size() + 1 != points.size())
    raise(Errc::ParamOutOfRange, "partition shape mismatch");
  for (size_t r = 0; r + 1 < points.size(); ++r) {
    if (!(points[r] < points[r + 1]))
      raise(Errc::ParamOutOfRange, "partition points must increase strictly");
    if (tags[r] < points[r] || tags[r] > points[r + 1])
      raise(Errc::ParamOutOfRange, "tag escapes its cell");
  }
}

Scalar stieltjes_sum(const KFunction& f, const KFunction& g, const Partition& part) {
  part.validate();
  if (!f.algebraic() || !g.algebraic())
    raise(Errc::IncompatibleIfs,
          "the classical sum needs functions defined at arbitrary points (algebraic nodes only)");
  CompensatedSum acc;
  for (int r = 0; r < part.cells(); ++r) {
    const Scalar& lo = part.points[static_cast<size_t>(r)];
    const Scalar& hi = part.points[static_cast<size_t>(r) + 1];
    acc.add(f.eval_real(part.tags[static_cast<size_t>(r)]) * (g.eval_real(hi) - g.eval_real(lo)));
  }
  return acc.value();
}

CorrespondenceReport interval_correspondence_check(const KFunction& f, const KFunction& g, int depth,
                                                   const Scalar& tol, bool float_mode) {
  Ifs ifs = float_mode ? to_float(binary_interval_ifs()) : binary_interval_ifs();
  CorrespondenceReport rep;
  rep.depth = depth;
  rep.tol = tol;
  rep.phi_value = phi_n(ifs, f, g, depth);
  Partition part = Partition::uniform(ifs.interval(), 1 << depth, TagRule::Midpoint);
  rep.stieltjes_twice = Scalar(2) * stieltjes_sum(f, g, part);
  rep.abs_difference = (rep.phi_value - rep.stieltjes_twice).abs();
  rep.within_tol = rep.abs_difference < tol;
  return rep;
}

}  // namespace fy
