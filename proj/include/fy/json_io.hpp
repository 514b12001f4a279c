#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "fy/integrator.hpp"

namespace fy {

/// {"interval": ["0","1"], "maps": [{"r":"1/3","t":"0"}, ...]} with scalars
/// as decimal or "p/q" strings (JSON integers also accepted).
Ifs ifs_from_json(const nlohmann::json& j, bool float_mode = false);
Ifs load_ifs(const std::string& path, bool float_mode = false);
nlohmann::json ifs_to_json(const Ifs& ifs);

/// Per-level CSV: n, phi_n, psi_n, delta = phi_n - phi_{n-1}, tail_bound
/// (psi/delta empty at n = 0; bound column empty without Holder data).
void result_to_csv(std::ostream& os, const IntegralResult& r);

nlohmann::json result_to_json(const IntegralResult& r);

}  // namespace fy
