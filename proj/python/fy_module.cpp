#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "fy/dsl.hpp"
#include "fy/errors.hpp"
#include "fy/identities.hpp"
#include "fy/json_io.hpp"
#include "fy/parallel.hpp"
#include "fy/substitution.hpp"
#include "fy/verify.hpp"
#include "fy/young.hpp"

namespace py = pybind11;
using namespace fy;

namespace {

// Scalars cross the boundary as "p/q" strings (exact) or floats.
py::object scalar_out(const Scalar& s) {
  if (s.is_exact()) return py::str(s.str());
  return py::float_(s.to_double());
}

Scalar scalar_in(const py::object& o) {
  if (py::isinstance<py::str>(o)) return Scalar::parse(o.cast<std::string>());
  if (py::isinstance<py::int_>(o)) return Scalar(o.cast<long long>());
  if (py::isinstance<py::float_>(o)) return Scalar(o.cast<double>());
  raise(Errc::ParseError, "scalars must be str, int or float");
}

py::dict result_out(const IntegralResult& r) {
  py::dict d;
  d["status"] = status_name(r.status);
  d["phi"] = [&] {
    py::list l;
    for (const auto& v : r.phi_seq) l.append(scalar_out(v));
    return l;
  }();
  d["psi"] = [&] {
    py::list l;
    for (const auto& v : r.psi_seq) l.append(scalar_out(v));
    return l;
  }();
  if (r.estimate) d["estimate"] = scalar_out(*r.estimate);
  if (r.growth_ratio) d["growth_ratio"] = scalar_out(*r.growth_ratio);
  if (r.bound_seq) {
    py::list l;
    for (const auto& v : *r.bound_seq) l.append(scalar_out(v));
    d["tail_bounds"] = l;
  }
  d["coercions"] = r.coercions;
  return d;
}

ConvergenceConfig config_in(int max_depth, const py::object& tol, int consecutive) {
  ConvergenceConfig cfg;
  if (max_depth > 0) cfg.max_depth = max_depth;
  if (!tol.is_none()) cfg.tol = scalar_in(tol);
  cfg.consecutive = consecutive;
  return cfg;
}

KFunction fn_in(const std::string& expr, const Ifs& host, const Ifs* target, bool float_mode) {
  DslContext ctx{&host, target, 8, float_mode};
  return parse_function(expr, ctx);
}

}  // namespace

PYBIND11_MODULE(_fy, m) {
  m.doc() = "Young-type integration on self-similar subsets of an interval";

  py::register_exception<Error>(m, "FyError");

  py::class_<Ifs>(m, "Ifs")
      .def_property_readonly("map_count", &Ifs::map_count)
      .def("__eq__", [](const Ifs& a, const Ifs& b) { return a == b; })
      .def("word_interval",
           [](const Ifs& ifs, const std::vector<int>& w) {
             auto [a, b] = ifs.word_interval(Word(w));
             return py::make_tuple(scalar_out(a), scalar_out(b));
           })
      .def("gap_intervals",
           [](const Ifs& ifs, const std::vector<int>& w) {
             py::list out;
             for (auto& [a, b] : ifs.gap_intervals(Word(w)))
               out.append(py::make_tuple(scalar_out(a), scalar_out(b)));
             return out;
           })
      .def("point",
           [](const Ifs& ifs, const std::vector<int>& prefix, int tail) {
             return scalar_out(ifs.point({Word(prefix), tail}));
           },
           py::arg("prefix"), py::arg("tail"))
      .def("to_json", [](const Ifs& ifs) { return ifs_to_json(ifs).dump(); })
      .def("__repr__", [](const Ifs& ifs) { return "Ifs(" + ifs_to_json(ifs).dump() + ")"; });

  py::class_<KFunction>(m, "KFunction").def("__str__", &KFunction::str);

  m.def("cantor_ifs", &cantor_ifs, py::arg("k"));
  m.def("binary_interval_ifs", &binary_interval_ifs);
  m.def("unequal_interval_ifs", &unequal_interval_ifs);
  m.def(
      "ifs_from_json",
      [](const std::string& text, bool float_mode) {
        return ifs_from_json(nlohmann::json::parse(text), float_mode);
      },
      py::arg("text"), py::arg("float_mode") = false);
  m.def(
      "load_ifs", [](const std::string& path, bool fm) { return load_ifs(path, fm); },
      py::arg("path"), py::arg("float_mode") = false);

  m.def(
      "parse_function",
      [](const std::string& expr, const Ifs& host, std::optional<Ifs> target, bool float_mode) {
        return fn_in(expr, host, target ? &*target : nullptr, float_mode);
      },
      py::arg("expr"), py::arg("host"), py::arg("target") = std::nullopt,
      py::arg("float_mode") = false);

  m.def(
      "phi_n",
      [](const Ifs& ifs, const std::string& f, const std::string& g, int n, bool float_mode) {
        return scalar_out(phi_n(ifs, fn_in(f, ifs, nullptr, float_mode),
                                fn_in(g, ifs, nullptr, float_mode), n));
      },
      py::arg("ifs"), py::arg("f"), py::arg("g"), py::arg("n"), py::arg("float_mode") = false);
  m.def(
      "psi_n",
      [](const Ifs& ifs, const std::string& f, const std::string& g, int n, bool float_mode) {
        return scalar_out(psi_n(ifs, fn_in(f, ifs, nullptr, float_mode),
                                fn_in(g, ifs, nullptr, float_mode), n));
      },
      py::arg("ifs"), py::arg("f"), py::arg("g"), py::arg("n"), py::arg("float_mode") = false);

  m.def(
      "integrate",
      [](const Ifs& ifs, const std::string& f, const std::string& g, int max_depth,
         const py::object& tol, int consecutive, bool float_mode) {
        IntegralResult r = integrate(ifs, fn_in(f, ifs, nullptr, float_mode),
                                     fn_in(g, ifs, nullptr, float_mode),
                                     config_in(max_depth, tol, consecutive));
        return result_out(r);
      },
      py::arg("ifs"), py::arg("f"), py::arg("g"), py::arg("max_depth") = -1,
      py::arg("tol") = py::none(), py::arg("consecutive") = 3, py::arg("float_mode") = false);

  m.def("moments", [](int max_m) {
    py::list out;
    for (const auto& v : moment_table(max_m)) out.append(scalar_out(v));
    return out;
  });
  m.def("moment_oracle",
        [](int m_, int n) { return scalar_out(moment_phi_n_oracle(m_, n)); });

  m.def("dimension", [](const Ifs& ifs) {
    DimensionResult d = similarity_dimension(ifs);
    py::dict out;
    out["value"] = d.value.to_double();
    if (d.log_form)
      out["log_form"] = py::make_tuple(scalar_out(d.log_form->first),
                                       scalar_out(d.log_form->second));
    return out;
  });

  m.def(
      "substitute",
      [](const Ifs& source, const Ifs& target, const std::vector<int>& rho, const std::string& f,
         const std::string& g, int check_depth) {
        SubstitutionMap map = SubstitutionMap::make(source, target, Permutation(rho), check_depth);
        py::dict out;
        out["sign_class"] = sign_class_name(map.sign_class());
        out["well_defined"] = map.well_defined().verified;
        out["injective_source"] = map.well_defined().injective_source;
        if (!map.well_defined().verified) return out;
        PullbackResult r = pullback_integral(map, fn_in(f, target, nullptr, false),
                                             fn_in(g, target, nullptr, false), {});
        out["source"] = result_out(*r.source);
        out["target"] = result_out(*r.target);
        out["identity_checked_depth"] = r.identity_checked_depth;
        return out;
      },
      py::arg("source"), py::arg("target"), py::arg("rho"), py::arg("f"), py::arg("g"),
      py::arg("check_depth") = 8);

  m.def("stieltjes_sum",
        [](const std::string& f, const std::string& g, int cells, const std::string& rule) {
          Ifs bi = binary_interval_ifs();
          TagRule tr = rule == "left" ? TagRule::Left
                                      : rule == "right" ? TagRule::Right : TagRule::Midpoint;
          Partition p = Partition::uniform(bi.interval(), cells, tr);
          return scalar_out(
              stieltjes_sum(fn_in(f, bi, nullptr, false), fn_in(g, bi, nullptr, false), p));
        },
        py::arg("f"), py::arg("g"), py::arg("cells"), py::arg("rule") = "midpoint");

  m.def("verify", [] {
    VerifyReport rep = run_verification();
    py::list out;
    for (const auto& c : rep.checks) {
      py::dict d;
      d["id"] = c.id;
      d["pass"] = c.pass;
      d["detail"] = c.detail;
      out.append(d);
    }
    return out;
  });

  m.def("set_worker_count", &set_worker_count);
  m.def("worker_count", &worker_count);
}
