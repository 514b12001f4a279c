#include "fy/json_io.hpp"

#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "fy/errors.hpp"

namespace fy {

namespace {

Scalar scalar_from_json(const nlohmann::json& j, bool float_mode) {
  Scalar s;
  if (j.is_string())
    s = Scalar::parse(j.get<std::string>());
  else if (j.is_number_integer())
    s = Scalar(static_cast<long long>(j.get<std::int64_t>()));
  else if (j.is_number())
    s = Scalar(j.get<double>());
  else
    raise(Errc::ParseError, "scalar must be a string or number: " + j.dump());
  return float_mode ? s.to_float() : s;
}

}  // namespace

Ifs ifs_from_json(const nlohmann::json& j, bool float_mode) {
  if (!j.contains("interval") || !j.contains("maps"))
    raise(Errc::ParseError, "IFS description needs 'interval' and 'maps'");
  const auto& iv = j.at("interval");
  if (!iv.is_array() || iv.size() != 2)
    raise(Errc::ParseError, "'interval' must be a two-element array");
  Interval interval{scalar_from_json(iv[0], float_mode), scalar_from_json(iv[1], float_mode)};
  std::vector<Contraction> maps;
  for (const auto& m : j.at("maps"))
    maps.push_back({scalar_from_json(m.at("r"), float_mode), scalar_from_json(m.at("t"), float_mode)});
  return Ifs::make(std::move(interval), std::move(maps));
}

Ifs load_ifs(const std::string& path, bool float_mode) {
  std::ifstream in(path);
  if (!in) raise(Errc::ParseError, "cannot open IFS file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return ifs_from_json(j, float_mode);
}

nlohmann::json ifs_to_json(const Ifs& ifs) {
  nlohmann::json j;
  j["interval"] = {ifs.interval().a.str(), ifs.interval().b.str()};
  j["maps"] = nlohmann::json::array();
  for (const auto& m : ifs.maps())
    j["maps"].push_back({{"r", m.ratio.str()}, {"t", m.offset.str()}});
  return j;
}

void result_to_csv(std::ostream& os, const IntegralResult& r) {
  os << "n,phi_n,psi_n,delta,tail_bound\n";
  for (size_t n = 0; n < r.phi_seq.size(); ++n) {
    os << n << ',' << r.phi_seq[n].str() << ',';
    if (n >= 1) os << r.psi_seq[n - 1].str();
    os << ',';
    if (n >= 1) os << (r.phi_seq[n] - r.phi_seq[n - 1]).str();
    os << ',';
    if (r.bound_seq && n >= 1) os << (*r.bound_seq)[n - 1].str();
    os << '\n';
  }
}

nlohmann::json result_to_json(const IntegralResult& r) {
  nlohmann::json j;
  j["status"] = status_name(r.status);
  if (r.estimate) j["estimate"] = r.estimate->str();
  if (r.growth_ratio) j["growth_ratio"] = r.growth_ratio->str();
  j["coercions"] = r.coercions;
  auto levels = nlohmann::json::array();
  for (size_t n = 0; n < r.phi_seq.size(); ++n) {
    nlohmann::json row;
    row["n"] = n;
    row["phi"] = r.phi_seq[n].str();
    if (n >= 1) {
      row["psi"] = r.psi_seq[n - 1].str();
      row["delta"] = (r.phi_seq[n] - r.phi_seq[n - 1]).str();
      if (r.bound_seq) row["tail_bound"] = (*r.bound_seq)[n - 1].str();
    }
    levels.push_back(std::move(row));
  }
  j["levels"] = std::move(levels);
  return j;
}

}  // namespace fy
