#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fy/ifs.hpp"

namespace fy {

class KFunction;
struct ConvergenceConfig;
struct IntegralResult;

class Permutation {
 public:
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);
  static Permutation parse(const std::string& csv);  // "0,2,1"

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int s) const;
  Word operator()(const Word& w) const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> image_;
};

enum class SignClass { PreservesEnds, FlipsEnds, Other };
const char* sign_class_name(SignClass s) noexcept;

struct WellDefinedness {
  bool verified = false;
  /// No touching images up to the checked depth, so the coding map is
  /// injective there and any permutation works.
  bool injective_source = false;
  int depth = 0;
  std::optional<std::pair<PointAddress, PointAddress>> witness;  // failing pair
};

/// Enumerates the adjacency-generated identified address pairs of the source
/// (b_{(w,l)} = a_{(w,l+1)} with touching images) up to `depth` and verifies
/// their digit-images are identified by the target's coding map.
WellDefinedness check_well_defined(const Ifs& source, const Ifs& target, const Permutation& rho,
                                   int depth = 8);

/// The point map T induced by applying a digit permutation through the coding
/// maps of two IFSs with the same alphabet size.
class SubstitutionMap {
 public:
  static SubstitutionMap make(Ifs source, Ifs target, Permutation rho, int check_depth = 8);

  const Ifs& source() const { return source_; }
  const Ifs& target() const { return target_; }
  const Permutation& rho() const { return rho_; }
  SignClass sign_class() const { return sign_; }
  const WellDefinedness& well_defined() const { return wd_; }

  /// Digit-wise rho on prefix and tail. Throws NotWellDefined if verification
  /// failed.
  PointAddress apply(const PointAddress& p) const;
  void apply_prefix(std::span<const int> in, std::span<int> out) const;
  int apply_digit(int d) const;

  bool operator==(const SubstitutionMap& o) const;

 private:
  SubstitutionMap(Ifs source, Ifs target, Permutation rho, SignClass sign, WellDefinedness wd)
      : source_(std::move(source)), target_(std::move(target)), rho_(std::move(rho)), sign_(sign),
        wd_(std::move(wd)) {}

  Ifs source_, target_;
  Permutation rho_;
  SignClass sign_;
  WellDefinedness wd_;
};

struct PullbackResult {
  IntegralResult* operator->();
  std::shared_ptr<IntegralResult> source;  // integral of (f∘T, g∘T) over the source set
  std::shared_ptr<IntegralResult> target;  // integral of (f, g) over the target set
  SignClass sign;
  /// Depth through which phi_n(source) = ±phi_n(target) was checked exactly
  /// (PreservesEnds/FlipsEnds only; -1 when no identity is asserted).
  int identity_checked_depth = -1;
};

/// Integrates the pulled-back pair over the source. For end-preserving or
/// end-flipping permutations the per-level identity against the target-side
/// sums is verified exactly as part of the computation.
PullbackResult pullback_integral(const SubstitutionMap& map, const KFunction& f, const KFunction& g,
                                 const ConvergenceConfig& cfg);

}  // namespace fy
