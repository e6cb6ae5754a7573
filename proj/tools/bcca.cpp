// Command line front end: verification suites plus direct access to the
// bracket, basis changes, module actions, cyclicity probes, annihilator
// computation, the local-function solver, and the alternant determinant.
//
// Output discipline: JSON goes to stdout (and is byte-identical for
// identical argv and seed); human-readable text goes to stderr. Exit codes:
// 0 success (every requested check passed or was labeled bounded-evidence),
// 1 a check failed, 2 usage or domain error, 3 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcca/algebra.hpp"
#include "bcca/basischange.hpp"
#include "bcca/localfn.hpp"
#include "bcca/rat.hpp"
#include "bcca/repmods.hpp"
#include "bcca/symbols.hpp"
#include "bcca/verify.hpp"

using namespace bcca;

namespace {

using Json = nlohmann::ordered_json;

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void emit_text(const std::string& s) { std::cerr << s << "\n"; }

// Accepts both the canonical sum form ("-1*O:5 + 5*O:1") and a bare symbol
// ("O:2") for element flags.
AlgElem parse_elem(const AlgebraId& alg, const std::string& text) {
  try {
    return alg_parse(alg, text);
  } catch (const DomainError&) {
    const BasisSymbol s = symbol_parse(text);
    return alg_sym(alg, s.family, s.index);
  }
}

Json elem_json(const AlgebraId& alg, const AlgElem& x) {
  Json terms = Json::array();
  for (const auto& [s, c] : x.terms()) {
    Json t;
    t["family"] = family_name(s.family);
    if (!family_is_central(s.family)) t["index"] = s.index;
    t["coeff"] = c.str();
    terms.push_back(t);
  }
  Json j;
  j["algebra"] = alg.str();
  j["terms"] = terms;
  return j;
}

Json mod_json(const ModuleSpec& spec, const ModVector& v) {
  Json terms = Json::array();
  for (const auto& [l, c] : v.terms()) {
    Json t;
    t["label"] = mod_label_str(spec, l);
    t["coeff"] = c.str();
    terms.push_back(t);
  }
  Json j;
  j["module"] = spec.str();
  j["terms"] = terms;
  return j;
}

Json local_fn_json(const LocalFunction& chi) {
  Json pts = Json::array();
  for (const auto& p : chi.points()) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(c.str());
    Json pt;
    pt["x"] = p.base.str();
    pt["coeffs"] = coeffs;
    pts.push_back(pt);
  }
  Json j;
  j["points"] = pts;
  return j;
}

long parse_index_key(const std::string& key) {
  try {
    std::size_t used = 0;
    const long v = std::stol(key, &used);
    if (used != key.size()) throw DomainError("bad index key: '" + key + "'");
    return v;
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("bad index key: '" + key + "'");
  }
}

// Whittaker data from JSON of the form
// {"algebra": "O"|"b", "level": n, "U": {"k": "p/q", ...}, "V": {...}}.
WhittakerFn fn_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
    const std::string alg = j.at("algebra").get<std::string>();
    if (alg != "O" && alg != "b") {
      throw DomainError("whittaker algebra must be O or b");
    }
    const long level = j.at("level").get<long>();
    std::map<long, Rat> u, v;
    if (j.contains("U")) {
      for (const auto& [k, val] : j.at("U").items()) {
        u[parse_index_key(k)] = Rat::parse(val.get<std::string>());
      }
    }
    if (j.contains("V")) {
      for (const auto& [k, val] : j.at("V").items()) {
        v[parse_index_key(k)] = Rat::parse(val.get<std::string>());
      }
    }
    return WhittakerFn(alg[0], level, std::move(u), std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad whittaker data: ") + e.what());
  }
}

struct ModFlags {
  std::string kind;
  std::string a = "0";
  std::string b = "0";
  std::string h = "0";
  std::string c = "0";
  std::string hl = "0";
  std::string hm = "0";
  std::string cl = "0";
  std::string cm = "0";
  std::string mass = "0";
  std::string spin = "0";
  std::string lambda = "0";
  std::string fn;
};

void add_mod_flags(CLI::App* sub, ModFlags* mf) {
  // Long-only help so the short -h does not collide with --h below.
  sub->set_help_flag("--help", "print help");
  sub->add_option("--module", mf->kind,
                  "module kind: tensor_density, pb, pb_tilde, verma_vir, "
                  "verma_bms, massive, omega, whittaker_O, whittaker_b, "
                  "quasi_whittaker_bms")
      ->required();
  sub->add_option("--a", mf->a, "weight a (p/q)");
  sub->add_option("--b", mf->b, "weight b (p/q)");
  sub->add_option("--h", mf->h, "highest weight h (p/q)");
  sub->add_option("--c", mf->c, "central charge c (p/q)");
  sub->add_option("--hl", mf->hl, "highest weight h_L (p/q)");
  sub->add_option("--hm", mf->hm, "highest weight h_M (p/q)");
  sub->add_option("--cl", mf->cl, "central charge c_L (p/q)");
  sub->add_option("--cm", mf->cm, "central charge c_M (p/q)");
  sub->add_option("--mass", mf->mass, "mass eigenvalue M (p/q)");
  sub->add_option("--spin", mf->spin, "spin s (p/q)");
  sub->add_option("--lambda", mf->lambda, "deformation parameter (p/q)");
  sub->add_option("--fn", mf->fn, "whittaker data JSON");
}

ModuleSpec build_spec(const ModFlags& mf) {
  const std::string& k = mf.kind;
  if (k == "tensor_density") {
    return ModuleSpec::tensor_density(Rat::parse(mf.a), Rat::parse(mf.b));
  }
  if (k == "pb") return ModuleSpec::pb(Rat::parse(mf.b));
  if (k == "pb_tilde") return ModuleSpec::pb_tilde(Rat::parse(mf.b));
  if (k == "verma_vir") {
    return ModuleSpec::verma_vir(Rat::parse(mf.h), Rat::parse(mf.c));
  }
  if (k == "verma_bms") {
    return ModuleSpec::verma_bms(Rat::parse(mf.hl), Rat::parse(mf.hm),
                                 Rat::parse(mf.cl), Rat::parse(mf.cm));
  }
  if (k == "massive") {
    return ModuleSpec::massive(Rat::parse(mf.mass), Rat::parse(mf.spin),
                               Rat::parse(mf.cl), Rat::parse(mf.cm));
  }
  if (k == "omega") {
    return ModuleSpec::omega(Rat::parse(mf.lambda), Rat::parse(mf.a));
  }
  if (k == "whittaker_O" || k == "whittaker_b") {
    if (mf.fn.empty()) {
      throw DomainError("whittaker kinds need --fn");
    }
    WhittakerFn fn = fn_from_json(mf.fn);
    return k == "whittaker_O" ? ModuleSpec::whittaker_O(std::move(fn))
                              : ModuleSpec::whittaker_b(std::move(fn));
  }
  if (k == "quasi_whittaker_bms") {
    return ModuleSpec::quasi_whittaker_bms(Rat::parse(mf.mass),
                                           Rat::parse(mf.cl),
                                           Rat::parse(mf.cm));
  }
  throw DomainError("unknown module kind: '" + k + "'");
}

// The massive module also accepts O/Ohat/P/Phat coordinates and omega also
// accepts the O family, so try those contexts after the acting algebra.
AlgElem parse_acting(const ModuleSpec& spec, const std::string& text) {
  std::vector<AlgebraId> ctxs{spec.acting_algebra()};
  if (spec.kind == ModKind::massive) {
    ctxs.push_back(AlgebraId::parse("bcca_hat"));
  }
  if (spec.kind == ModKind::omega) {
    ctxs.push_back(AlgebraId::parse("O"));
  }
  for (std::size_t i = 0; i + 1 < ctxs.size(); ++i) {
    try {
      return parse_elem(ctxs[i], text);
    } catch (const DomainError&) {
    }
  }
  return parse_elem(ctxs.back(), text);
}

std::string probe_status_str(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::reduced:
      return "reduced";
    case ProbeStatus::refused:
      return "refused";
    default:
      return "failed";
  }
}

int run_verify_cmd(const std::string& group, const VerifyOptions& opts,
                   bool json) {
  const std::vector<CheckReport> reports = run_verify(group, opts);
  bool any_fail = false;
  if (json) {
    Json arr = Json::array();
    for (const auto& r : reports) {
      // runtime_ms stays out of the JSON report so identical argv and seed
      // produce byte-identical output.
      Json details;
      for (const auto& [k, v] : r.details) details[k] = v;
      Json item;
      item["check_id"] = r.check_id;
      item["status"] = r.status;
      item["details"] = details;
      arr.push_back(item);
    }
    emit_json(arr);
  }
  for (const auto& r : reports) {
    if (r.status == "fail") any_fail = true;
    if (!json) {
      emit_text("[" + r.status + "] " + r.check_id + " (" +
                std::to_string(r.runtime_ms) + " ms)");
      if (r.status != "pass") {
        for (const auto& [k, v] : r.details) {
          emit_text("  " + k + ": " + v);
        }
      }
    }
  }
  if (!json) {
    long failed = 0;
    long bounded = 0;
    for (const auto& r : reports) {
      if (r.status == "fail") ++failed;
      if (r.status == "bounded-evidence") ++bounded;
    }
    emit_text("verify " + group + ": " + std::to_string(reports.size()) +
              " checks, " + std::to_string(failed) + " failed, " +
              std::to_string(bounded) + " bounded-evidence");
  }
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic toolkit for the boundary Carrollian conformal "
               "algebra and its relatives"};
  app.require_subcommand(1);

  std::string format = "text";
  const auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  // verify
  std::string verify_group = "all";
  VerifyOptions vopts;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run a verification suite");
  {
    std::string groups;
    for (const auto& g : verify_groups()) {
      if (!groups.empty()) groups += ", ";
      groups += g;
    }
    verify_cmd->add_option("group", verify_group, "one of: " + groups);
  }
  verify_cmd->add_option("--window", vopts.window, "index window half-width");
  verify_cmd->add_option("--depth", vopts.depth, "recursion depth bound");
  verify_cmd->add_option("--seed", vopts.seed, "sampling seed");
  add_format(verify_cmd);

  // bracket
  std::string br_algebra;
  std::string br_lambda;
  std::string br_x;
  std::string br_y;
  CLI::App* bracket_cmd =
      app.add_subcommand("bracket", "bracket of two elements");
  bracket_cmd->add_option("--algebra", br_algebra, "algebra name")->required();
  bracket_cmd->add_option("--lambda", br_lambda,
                          "family parameter for O_lambda / f_lambda (p/q)");
  bracket_cmd->add_option("--x", br_x, "left element")->required();
  bracket_cmd->add_option("--y", br_y, "right element")->required();
  add_format(bracket_cmd);

  // change-basis
  std::optional<long> cb_u, cb_v, cb_o, cb_p;
  std::string cb_to_uv, cb_to_op;
  CLI::App* cb_cmd = app.add_subcommand(
      "change-basis", "convert between the O/P and u/v bases");
  cb_cmd->add_option("--u", cb_u, "expand u_N in the O/P basis");
  cb_cmd->add_option("--v", cb_v, "expand v_N in the O/P basis");
  cb_cmd->add_option("--o", cb_o, "expand O_N in the u/v basis");
  cb_cmd->add_option("--p", cb_p, "expand P_N in the u/v basis");
  cb_cmd->add_option("--to-uv", cb_to_uv, "rewrite an O/P element in u/v");
  cb_cmd->add_option("--to-op", cb_to_op, "rewrite a u/v element in O/P");
  add_format(cb_cmd);

  // act
  ModFlags act_mf;
  std::string act_x;
  std::string act_v;
  CLI::App* act_cmd =
      app.add_subcommand("act", "apply an algebra element to a module vector");
  add_mod_flags(act_cmd, &act_mf);
  act_cmd->add_option("--x", act_x, "acting element")->required();
  act_cmd->add_option("--v", act_v,
                      "module vector (default: the distinguished vector)");
  add_format(act_cmd);

  // probe
  ModFlags pr_mf;
  std::string pr_v;
  long pr_length_bound = 6;
  CLI::App* probe_cmd = app.add_subcommand(
      "probe", "drive a vector to the cyclic vector by shifted generators");
  add_mod_flags(probe_cmd, &pr_mf);
  probe_cmd->add_option("--v", pr_v, "module vector to probe")->required();
  probe_cmd->add_option("--length-bound", pr_length_bound,
                        "refuse words longer than this");
  add_format(probe_cmd);

  // annihilator
  std::string an_side = "bms";
  std::string an_mass = "1";
  std::string an_cl = "0";
  std::string an_cm = "0";
  long an_window = 6;
  CLI::App* an_cmd = app.add_subcommand(
      "annihilator", "ideal generators annihilating the whittaker vector");
  an_cmd->add_option("--side", an_side, "bms (L over M) or hat (O over P)")
      ->check(CLI::IsMember({"bms", "hat"}));
  an_cmd->add_option("--mass", an_mass, "mass eigenvalue M (p/q)");
  an_cmd->add_option("--cl", an_cl, "central charge c_L (p/q)");
  an_cmd->add_option("--cm", an_cm, "central charge c_M (p/q)");
  an_cmd->add_option("--window", an_window, "probe window");
  add_format(an_cmd);

  // solve-localfn
  std::string sl_fn;
  CLI::App* sl_cmd = app.add_subcommand(
      "solve-localfn",
      "express whittaker data as a three-point local function");
  sl_cmd->add_option("--fn", sl_fn, "whittaker data JSON")->required();
  add_format(sl_cmd);

  // tau
  std::string tau_mu;
  long tau_r = 1;
  long tau_u = 0;
  std::string tau_convention = "prelem";
  CLI::App* tau_cmd =
      app.add_subcommand("tau", "alternant determinant tau_r^(u)(mu)");
  tau_cmd->add_option("--mu", tau_mu, "base value mu (p/q)")->required();
  tau_cmd->add_option("--r", tau_r, "matrix half-size r >= 1");
  tau_cmd->add_option("--u", tau_u, "row offset u >= 0");
  tau_cmd->add_option("--convention", tau_convention,
                      "row convention: prelem (rows u..u+2r-1) or display "
                      "(rows u+1..u+2r)")
      ->check(CLI::IsMember({"prelem", "display"}));
  add_format(tau_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool json = format == "json";
  try {
    if (verify_cmd->parsed()) {
      return run_verify_cmd(verify_group, vopts, json);
    }

    if (bracket_cmd->parsed()) {
      std::optional<Rat> lambda;
      if (!br_lambda.empty()) lambda = Rat::parse(br_lambda);
      const AlgebraId alg = AlgebraId::parse(br_algebra, lambda);
      const AlgElem z =
          bracket(alg, parse_elem(alg, br_x), parse_elem(alg, br_y));
      if (json) {
        emit_json(elem_json(alg, z));
      } else {
        emit_text(z.str());
      }
      return 0;
    }

    if (cb_cmd->parsed()) {
      const int modes = int(cb_u.has_value()) + int(cb_v.has_value()) +
                        int(cb_o.has_value()) + int(cb_p.has_value()) +
                        int(!cb_to_uv.empty()) + int(!cb_to_op.empty());
      if (modes != 1) {
        throw DomainError(
            "change-basis needs exactly one of --u, --v, --o, --p, --to-uv, "
            "--to-op");
      }
      const AlgebraId op_alg = AlgebraId::parse("bcca");
      const AlgebraId uv_alg = AlgebraId::parse("b_uv");
      AlgebraId out_alg = op_alg;
      AlgElem z;
      if (cb_u) {
        z = uv_from_OP(*cb_u, Family::u);
      } else if (cb_v) {
        z = uv_from_OP(*cb_v, Family::v);
      } else if (cb_o) {
        z = op_from_uv(*cb_o, Family::O);
        out_alg = uv_alg;
      } else if (cb_p) {
        z = op_from_uv(*cb_p, Family::P);
        out_alg = uv_alg;
      } else if (!cb_to_uv.empty()) {
        z = to_uv_basis(parse_elem(op_alg, cb_to_uv));
        out_alg = uv_alg;
      } else {
        z = to_op_basis(parse_elem(uv_alg, cb_to_op));
      }
      if (json) {
        emit_json(elem_json(out_alg, z));
      } else {
        emit_text(z.str());
      }
      return 0;
    }

    if (act_cmd->parsed()) {
      const ModuleSpec spec = build_spec(act_mf);
      const AlgElem x = parse_acting(spec, act_x);
      const ModVector v =
          act_v.empty() ? mod_cyclic(spec) : mod_parse(spec, act_v);
      const ModVector r = act(spec, x, v);
      if (json) {
        emit_json(mod_json(spec, r));
      } else {
        emit_text(mod_str(spec, r));
      }
      return 0;
    }

    if (probe_cmd->parsed()) {
      const ModuleSpec spec = build_spec(pr_mf);
      const ModVector v = mod_parse(spec, pr_v);
      const ProbeResult r = cyclicity_probe(spec, v, pr_length_bound);
      if (json) {
        Json steps = Json::array();
        for (const auto& st : r.steps) {
          Json step;
          step["op"] = st.op.str();
          step["shift"] = st.shift.str();
          steps.push_back(step);
        }
        Json j;
        j["status"] = probe_status_str(r.status);
        j["steps"] = steps;
        j["final_coeff"] = r.final_coeff.str();
        j["final"] = mod_str(spec, r.final_vector);
        if (!r.detail.empty()) j["detail"] = r.detail;
        if (!r.witness.is_zero()) j["witness"] = mod_str(spec, r.witness);
        emit_json(j);
      } else {
        emit_text("status: " + probe_status_str(r.status));
        for (const auto& st : r.steps) {
          emit_text("  apply (" + st.op.str() + ") - (" + st.shift.str() +
                    ")");
        }
        emit_text("final: " + mod_str(spec, r.final_vector));
        emit_text("final_coeff: " + r.final_coeff.str());
        if (!r.detail.empty()) emit_text("detail: " + r.detail);
        if (!r.witness.is_zero()) {
          emit_text("witness: " + mod_str(spec, r.witness));
        }
      }
      return r.status == ProbeStatus::failed ? 1 : 0;
    }

    if (an_cmd->parsed()) {
      const Rat mass = Rat::parse(an_mass);
      const Rat cl = Rat::parse(an_cl);
      const Rat cm = Rat::parse(an_cm);
      std::vector<BasisSymbol> syms;
      if (an_side == "bms") {
        syms = whittaker_annihilator(AlgebraId::parse("bms3"), {Family::L},
                                     {Family::M},
                                     massive_quasi_character(mass, cl, cm),
                                     an_window);
      } else {
        syms = whittaker_annihilator(AlgebraId::parse("bcca_hat"),
                                     {Family::O}, {Family::P},
                                     massive_b_character(mass, cm), an_window);
      }
      if (json) {
        Json arr = Json::array();
        for (const auto& s : syms) arr.push_back(symbol_str(s));
        Json j;
        j["side"] = an_side;
        j["annihilator"] = arr;
        emit_json(j);
      } else {
        std::string line;
        for (const auto& s : syms) {
          if (!line.empty()) line += " ";
          line += symbol_str(s);
        }
        emit_text(line.empty() ? "(none)" : line);
      }
      return 0;
    }

    if (sl_cmd->parsed()) {
      const WhittakerFn fn = fn_from_json(sl_fn);
      const LocalSolveReport r = solve_whittaker_local(fn);
      if (json) {
        Json alpha = Json::array();
        for (const auto& c : r.alpha) alpha.push_back(c.str());
        Json j;
        j["chi"] = local_fn_json(r.chi);
        j["alpha"] = alpha;
        j["beta1"] = r.beta1.str();
        j["gamma1"] = r.gamma1.str();
        j["alpha_top_nonzero"] = r.alpha_top_nonzero;
        j["alpha_subtop_nonzero"] = r.alpha_subtop_nonzero;
        j["even_step_differs"] = r.even_step_differs;
        j["odd_step_differs"] = r.odd_step_differs;
        j["orders_positive"] = all_orders_positive(r.chi);
        emit_json(j);
      } else {
        emit_text("chi: " + r.chi.str());
        std::string alpha;
        for (const auto& c : r.alpha) {
          if (!alpha.empty()) alpha += ", ";
          alpha += c.str();
        }
        emit_text("alpha: [" + alpha + "]");
        emit_text("beta1: " + r.beta1.str());
        emit_text("gamma1: " + r.gamma1.str());
        emit_text(std::string("alpha_top_nonzero: ") +
                  (r.alpha_top_nonzero ? "true" : "false"));
        emit_text(std::string("alpha_subtop_nonzero: ") +
                  (r.alpha_subtop_nonzero ? "true" : "false"));
        emit_text(std::string("even_step_differs: ") +
                  (r.even_step_differs ? "true" : "false"));
        emit_text(std::string("odd_step_differs: ") +
                  (r.odd_step_differs ? "true" : "false"));
        emit_text(std::string("orders_positive: ") +
                  (all_orders_positive(r.chi) ? "true" : "false"));
      }
      return 0;
    }

    if (tau_cmd->parsed()) {
      const Rat mu = Rat::parse(tau_mu);
      const TauConvention conv = tau_convention == "prelem"
                                     ? TauConvention::kStandard
                                     : TauConvention::kShifted;
      const Rat direct = tau_direct(mu, tau_r, tau_u, conv);
      const Rat formula = tau_formula(mu, tau_r, tau_u, conv);
      if (direct != formula) {
        throw InternalError("tau determinant disagrees with its closed form");
      }
      if (json) {
        Json j;
        j["value"] = direct.str();
        emit_json(j);
      } else {
        emit_text(direct.str());
      }
      return 0;
    }

    throw DomainError("no subcommand selected");
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
