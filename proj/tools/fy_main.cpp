#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include "fy/dsl.hpp"
#include "fy/errors.hpp"
#include "fy/identities.hpp"
#include "fy/json_io.hpp"
#include "fy/parallel.hpp"
#include "fy/substitution.hpp"
#include "fy/verify.hpp"
#include "fy/young.hpp"

namespace {

using namespace fy;

std::optional<HolderData> parse_holder(const std::string& csv) {
  if (csv.empty()) return std::nullopt;
  auto first = csv.find(','), second = csv.rfind(',');
  if (first == std::string::npos || second == first)
    raise(Errc::ParseError, "holder data must be 'alpha,seminorm,sup'");
  return HolderData{Scalar::parse(csv.substr(0, first)),
                    Scalar::parse(csv.substr(first + 1, second - first - 1)),
                    Scalar::parse(csv.substr(second + 1))};
}

ConvergenceConfig make_config(int depth, const std::string& tol, int consecutive,
                              std::uint64_t max_words, const std::string& holder_f,
                              const std::string& holder_g) {
  ConvergenceConfig cfg;
  if (depth > 0) cfg.max_depth = depth;
  if (!tol.empty()) cfg.tol = Scalar::parse(tol);
  cfg.consecutive = consecutive;
  cfg.max_words = max_words;
  cfg.holder_f = parse_holder(holder_f);
  cfg.holder_g = parse_holder(holder_g);
  return cfg;
}

void emit_result(const IntegralResult& r, const std::string& output, const std::string& format) {
  auto write = [&](std::ostream& os) {
    if (format == "json")
      os << result_to_json(r).dump(2) << '\n';
    else
      result_to_csv(os, r);
  };
  if (output.empty() || output == "-") {
    write(std::cout);
  } else {
    std::ofstream out(output);
    if (!out) raise(Errc::ParseError, "cannot open output file '" + output + "'");
    write(out);
  }
  std::cout << "# status: " << status_name(r.status) << '\n';
  if (r.estimate) std::cout << "# estimate: " << r.estimate->str() << '\n';
  if (r.growth_ratio) std::cout << "# growth_ratio: " << r.growth_ratio->str() << '\n';
  if (r.coercions) std::cout << "# coercions: " << r.coercions << '\n';
}

int status_exit_code(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Converged: return 0;
    case IntegrationStatus::Diverged: return 2;
    case IntegrationStatus::BudgetExhausted: return 3;
  }
  return 1;
}

std::string decimal6(const Scalar& s) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", s.to_double());
  return buf;
}

// Integers without the /1 suffix, for human-facing lines.
std::string compact(const Scalar& s) {
  if (s.is_exact() && s.denominator() == 1) return s.numerator().str();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Young-type integration on self-similar subsets of an interval"};
  app.require_subcommand(1);

  int threads = worker_count();
  app.add_option("--threads", threads, "worker threads for level sums");

  // integrate
  auto* cmd_int = app.add_subcommand("integrate", "iterate the level sums of a pair (f,g)");
  std::string ifs_path, f_expr, g_expr, tol_str, output, format = "csv", holder_f, holder_g;
  int depth = -1, consecutive = 3;
  std::uint64_t max_words = default_word_cap();
  bool float_mode = false;
  cmd_int->add_option("--ifs", ifs_path, "IFS description (json)")->required();
  cmd_int->add_option("--f", f_expr, "integrand expression")->required();
  cmd_int->add_option("--g", g_expr, "integrator expression")->required();
  cmd_int->add_option("--depth", depth, "maximum level");
  cmd_int->add_option("--tol", tol_str, "convergence tolerance");
  cmd_int->add_option("--consecutive", consecutive, "levels a criterion must persist");
  cmd_int->add_option("--max-words", max_words, "word budget per level");
  cmd_int->add_option("--output", output, "write per-level table to this file");
  cmd_int->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd_int->add_option("--holder-f", holder_f, "alpha,seminorm,sup for f");
  cmd_int->add_option("--holder-g", holder_g, "alpha,seminorm,sup for g");
  cmd_int->add_flag("--float", float_mode, "force floating-point mode");

  // moments
  auto* cmd_mom = app.add_subcommand("moments", "table of x^m against the Cantor function");
  int max_m = 6, oracle_depth = 8;
  cmd_mom->add_option("--max-m", max_m, "largest moment order");
  cmd_mom->add_option("--oracle-depth", oracle_depth, "level for the endpoint-sum oracle column");

  // dimension
  auto* cmd_dim = app.add_subcommand("dimension", "similarity dimension of an IFS");
  std::string dim_ifs, dim_tol;
  cmd_dim->add_option("--ifs", dim_ifs, "IFS description (json)")->required();
  cmd_dim->add_option("--tol", dim_tol, "bisection tolerance");

  // substitute
  auto* cmd_sub = app.add_subcommand("substitute", "digit substitution between two IFSs");
  std::string src_path, tgt_path, rho_csv, sub_f = "const(1)", sub_g = "x", sub_tol;
  int sub_depth = -1, check_depth = 8;
  cmd_sub->add_option("--source", src_path, "source IFS (json)")->required();
  cmd_sub->add_option("--target", tgt_path, "target IFS (json)")->required();
  cmd_sub->add_option("--rho", rho_csv, "digit permutation, e.g. 0,2,1")->required();
  cmd_sub->add_option("--f", sub_f, "target-side integrand");
  cmd_sub->add_option("--g", sub_g, "target-side integrator");
  cmd_sub->add_option("--depth", sub_depth, "maximum level");
  cmd_sub->add_option("--tol", sub_tol, "convergence tolerance");
  cmd_sub->add_option("--check-depth", check_depth, "identification depth for verification");

  // verify
  auto* cmd_ver = app.add_subcommand("verify", "run the full verification suite");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "integrability grid over (p,q)");
  int sweep_k = 1, steps = 9;
  cmd_sweep->add_option("--k", sweep_k, "Cantor family index");
  cmd_sweep->add_option("--steps", steps, "grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  set_worker_count(threads);

  try {
    if (*cmd_int) {
      Ifs ifs = load_ifs(ifs_path, float_mode);
      DslContext ctx{&ifs, nullptr, 8, float_mode};
      KFunction f = parse_function(f_expr, ctx);
      KFunction g = parse_function(g_expr, ctx);
      IntegralResult r =
          integrate(ifs, f, g, make_config(depth, tol_str, consecutive, max_words, holder_f, holder_g));
      emit_result(r, output, format);
      return status_exit_code(r.status);
    }

    if (*cmd_mom) {
      auto table = moment_table(max_m);
      std::cout << "m\tvalue\tdecimal\toracle(depth=" << oracle_depth << ")\n";
      for (int m = 0; m <= max_m; ++m) {
        Scalar oracle = moment_phi_n_oracle(m, oracle_depth);
        std::cout << m << '\t' << table[static_cast<size_t>(m)].str() << '\t'
                  << decimal6(table[static_cast<size_t>(m)]) << '\t' << oracle.str() << '\n';
      }
      return 0;
    }

    if (*cmd_dim) {
      Ifs ifs = load_ifs(dim_ifs);
      DimensionResult d = dim_tol.empty() ? similarity_dimension(ifs)
                                          : similarity_dimension(ifs, Scalar::parse(dim_tol));
      if (d.log_form) {
        std::cout << "log_" << compact(d.log_form->first) << "(" << compact(d.log_form->second)
                  << ") ≈ " << decimal6(d.value) << '\n';
      } else {
        std::cout << decimal6(d.value) << '\n';
      }
      return 0;
    }

    if (*cmd_sub) {
      Ifs source = load_ifs(src_path);
      Ifs target = load_ifs(tgt_path);
      SubstitutionMap map =
          SubstitutionMap::make(source, target, Permutation::parse(rho_csv), check_depth);
      std::cout << "sign_class: " << sign_class_name(map.sign_class()) << '\n';
      const auto& wd = map.well_defined();
      std::cout << "well_defined: " << (wd.verified ? "verified" : "falsified")
                << (wd.injective_source ? " (injective coding)" : "") << '\n';
      if (!wd.verified) {
        if (wd.witness)
          std::cout << "witness: " << wd.witness->first.str() << " ~ " << wd.witness->second.str()
                    << '\n';
        return 1;
      }
      DslContext ctx{&target, nullptr, check_depth, false};
      KFunction f = parse_function(sub_f, ctx);
      KFunction g = parse_function(sub_g, ctx);
      ConvergenceConfig cfg = make_config(sub_depth, sub_tol, 3, default_word_cap(), "", "");
      PullbackResult r = pullback_integral(map, f, g, cfg);
      auto show = [](const char* side, const IntegralResult& res) {
        std::cout << side << ": " << status_name(res.status);
        if (res.estimate) std::cout << " " << res.estimate->str();
        if (res.growth_ratio) std::cout << " ratio " << res.growth_ratio->str();
        std::cout << '\n';
      };
      show("phi_source(f∘T, g∘T)", *r.source);
      show("phi_target(f, g)", *r.target);
      if (r.identity_checked_depth >= 0)
        std::cout << "per-level identity verified through level " << r.identity_checked_depth
                  << '\n';
      return 0;
    }

    if (*cmd_ver) {
      VerifyReport rep = run_verification();
      std::cout << render(rep);
      return rep.all_pass() ? 0 : 1;
    }

    if (*cmd_sweep) {
      if (sweep_k < 1 || steps < 1) raise(Errc::ParamOutOfRange, "bad sweep parameters");
      Ifs cs = cantor_ifs(sweep_k);
      Scalar crit = Scalar::ratio(1, sweep_k + 1);
      std::cout << "p,q,status,region\n";
      for (int i = 1; i <= steps; ++i) {
        for (int j = 1; j <= steps; ++j) {
          Scalar p = Scalar::ratio(i, steps + 1), q = Scalar::ratio(j, steps + 1);
          IntegralResult r =
              integrate(cs, KFunction::cantor(sweep_k, p), KFunction::cantor(sweep_k, q));
          const char* region = q <= crit ? "integrable" : (p * q < crit ? "ii" : "i");
          std::cout << p.str() << ',' << q.str() << ',' << status_name(r.status) << ',' << region
                    << '\n';
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
