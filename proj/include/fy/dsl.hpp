#pragma once

#include <string_view>

#include "fy/kfunction.hpp"

namespace fy {

/// Parse context: `host` is the IFS the function lives on; `target` (when
/// present) is the far side available to pullback(...) nodes.
struct DslContext {
  const Ifs* host = nullptr;
  const Ifs* target = nullptr;
  int pullback_check_depth = 8;
  bool float_mode = false;
};

/// Grammar: const(c) | x | f^m | cantor(k,p) | step(c) |
///          digitw([c0,...,cN-1];ratio) | f+g | f*g | scale(c,f) |
///          pullback([rho],f) | (f)
/// Scalars are decimal or "p/q" literals.
KFunction parse_function(std::string_view text, const DslContext& ctx);

}  // namespace fy
