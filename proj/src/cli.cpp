// Copyright 2026 The contextcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "contextcost/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "contextcost/io.hpp"
#include "contextcost/quantum.hpp"

namespace contextcost {
namespace {

const char* mode_name(ArithmeticMode m) { return m == ArithmeticMode::kExact ? "exact" : "float"; }

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << round_sig12(x);
  return s.str();
}

void emit(std::ostream& out, const RunConfig& cfg, const Json& report, const std::string& text) {
  if (cfg.format == OutputFormat::kJson) {
    out << dump_json(report);
  } else {
    out << text;
  }
}

Json config_json(const RunConfig& cfg) {
  return Json{{"mode", mode_name(cfg.mode)},
              {"tolerance", report_number(cfg.tolerance)},
              {"log_base", report_number(cfg.log_base)}};
}

template <class S>
SingleStateModel<S> apply_prior(const SingleStateModel<S>& m, const RunConfig& cfg) {
  if (cfg.prior.empty()) return m;
  if (cfg.prior == "uniform") return m.with_prior(Dist<S>::uniform(m.contexts()));
  return m.with_prior(prior_from_json<S>(read_json_file(cfg.prior), m.contexts()));
}

std::string validation_text(const ValidationReport& v, const Scenario& sc) {
  std::ostringstream s;
  s << "validation: " << (v.consistent ? "consistent" : "INCONSISTENT") << "\n";
  for (const auto& f : v.normalization) s << "  context " << f.context_key << " sums to " << num(f.sum) << "\n";
  for (const auto& f : v.disturbance) {
    s << "  contexts " << sc.context_key(f.first) << " and " << sc.context_key(f.second) << " disagree on {";
    for (std::size_t i = 0; i < f.shared.size(); ++i) s << (i ? "," : "") << f.shared[i];
    s << "} by " << num(f.max_deviation) << "\n";
  }
  return s.str();
}

template <class S>
int analyze(const Json& doc, const RunConfig& cfg, std::ostream& out) {
  const EmpiricalModel<S> em = empirical_model_from_json<S>(doc);
  const ValidationReport v = validate(em, cfg.tolerance);
  Json report{{"command", "analyze"}, {"config", config_json(cfg)}, {"validation", to_json(v, em.scenario())}};
  std::string text = validation_text(v, em.scenario());
  if (!v.consistent) {
    emit(out, cfg, report, text);
    return kExitInvalidInput;
  }

  SolverOptions opts;
  opts.assignment_cap = cfg.assignment_cap;
  opts.tolerance = cfg.tolerance;
  const FeasibilityResult r = global_joint_exists(em, opts);
  Json feas = to_json(r);
  std::ostringstream s;
  s << "global joint: " << to_string(r.status) << " (" << r.assignment_count << " assignments, " << r.pivots
    << " pivots)\n";
  if (!ScalarTraits<S>::exact) s << "snap distance: " << num(r.snap_distance) << "\n";
  if (r.witness) {
    const bool ok = verify_witness(em, *r.witness, cfg.tolerance);
    feas["witness_verified"] = ok;
    s << "witness (" << (ok ? "verified" : "NOT verified") << "):\n";
    for (const auto& wa : *r.witness) {
      s << "  " << std::setw(12) << format_rational(wa.weight) << "  ";
      bool first = true;
      for (const Observable& o : em.scenario().observables()) {
        s << (first ? "" : " ") << o.name << "=" << wa.assignment.at(o.name);
        first = false;
      }
      s << "\n";
    }
  }
  if (r.certificate) {
    bool ok;
    if constexpr (ScalarTraits<S>::exact) {
      ok = check_certificate(em, *r.certificate, opts);
    } else {
      ok = check_certificate(snap_model(em, opts.snap_denominator).first, *r.certificate, opts);
    }
    feas["certificate_valid"] = ok;
    s << "Farkas certificate (" << (ok ? "valid" : "INVALID") << "):\n";
    for (std::size_t i = 0; i < r.certificate->size(); ++i) {
      const Rational& y = (*r.certificate)[i];
      if (sgn(y) != 0) s << "  " << r.constraint_labels[i] << "  " << format_rational(y) << "\n";
    }
  }
  report["feasibility"] = std::move(feas);
  text += s.str();
  text += r.status == Feasibility::kFeasible ? "verdict: noncontextual\n" : "verdict: contextual\n";
  emit(out, cfg, report, text);
  return r.status == Feasibility::kFeasible ? kExitOk : kExitContextual;
}

std::string cost_text(const CostReport& r, double base) {
  std::string unit = " bits";
  if (base == std::exp(1.0)) {
    unit = " nats";
  } else if (base != 2.0) {
    unit = " (log base " + format_double(base) + ")";
  }
  std::ostringstream s;
  s << "I(C;O|lambda) = " << num(r.i_c_o_given_lambda) << unit << "\n"
    << "I(C;M|lambda) = " << num(r.i_c_m_given_lambda) << unit << "\n"
    << "H(M)          = " << num(r.h_m) << unit << "\n"
    << "bound H(M) >= I(C;O|lambda): " << (r.bound_satisfied ? "holds" : "VIOLATED") << "\n"
    << "chain I(C;O|lambda) <= I(C;M|lambda) <= H(M): " << (r.chain_satisfied ? "holds" : "VIOLATED") << "\n"
    << "saturated: " << (r.saturated ? "yes" : "no") << "\n"
    << "reproduction max deviation: " << num(r.reproduction_max_deviation) << "\n";
  return s.str();
}

template <class S>
std::string prior_text(const Dist<S>& prior) {
  std::ostringstream s;
  s << "prior p(C):";
  for (std::size_t i = 0; i < prior.size(); ++i) s << " " << prior.alphabet()[i] << "=" << ScalarTraits<S>::format(prior[i]);
  s << "\n";
  return s.str();
}

template <class S>
int cost(const Json& doc, const RunConfig& cfg, std::ostream& out) {
  const SingleStateModel<S> m = apply_prior(ontological_model_from_json<S>(doc), cfg);
  validate_model(m, cfg.tolerance);
  const MinimalCost<S> mc = minimal_deterministic_cost(m, cfg.log_base, cfg.tolerance);
  Json cells = Json::array();
  for (const auto& cell : mc.cells) cells.push_back(cell);
  Json report{{"command", "cost"},
              {"config", config_json(cfg)},
              {"prior", prior_to_json(m.context_prior())},
              {"response_noncontextual", is_response_noncontextual(m, cfg.tolerance)},
              {"minimal_channel", to_json(mc.channel)},
              {"cells", std::move(cells)},
              {"cost_report", to_json(mc.report)}};
  std::ostringstream s;
  s << prior_text(m.context_prior());
  s << "minimal deterministic channel: " << mc.cells.size() << " cell(s)\n";
  for (std::size_t k = 0; k < mc.cells.size(); ++k) {
    s << "  " << mc.channel.m_alphabet[k] << ":";
    for (const auto& c : mc.cells[k]) s << " " << c;
    s << "\n";
  }
  s << cost_text(mc.report, cfg.log_base);
  emit(out, cfg, report, s.str());
  return kExitOk;
}

template <class S>
int verify(const Json& model_doc, const Json& channel_doc, const RunConfig& cfg, std::ostream& out) {
  const SingleStateModel<S> m = apply_prior(ontological_model_from_json<S>(model_doc), cfg);
  validate_model(m, cfg.tolerance);
  const AuxChannel<S> ch = channel_from_json<S>(channel_doc, m);
  const MediationReport med = check_mediation(m, ch, cfg.tolerance);
  Json report{{"command", "verify"},
              {"config", config_json(cfg)},
              {"prior", prior_to_json(m.context_prior())},
              {"mediation", to_json(med)}};
  std::ostringstream s;
  s << prior_text(m.context_prior());
  s << "mediation: " << (med.passes ? "passes" : "FAILS") << " (max deviation " << num(med.max_deviation);
  if (!med.passes) s << " at context " << med.worst_context << ", lambda " << med.worst_lambda << ", outcome " << med.worst_outcome;
  s << ")\n";
  if (!med.passes) {
    emit(out, cfg, report, s.str());
    return kExitMediationFailed;
  }
  const CostReport r = verify_bound(m, ch, cfg.log_base, cfg.tolerance);
  report["cost_report"] = to_json(r);
  s << cost_text(r, cfg.log_base);
  emit(out, cfg, report, s.str());
  return r.bound_satisfied && r.chain_satisfied ? kExitOk : kExitInternal;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ValidationError& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const LookupError& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int cmd_analyze(const std::string& model_path, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json doc = read_json_file(model_path);
    return cfg.mode == ArithmeticMode::kExact ? analyze<Rational>(doc, cfg, out) : analyze<double>(doc, cfg, out);
  });
}

int cmd_cost(const std::string& model_path, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json doc = read_json_file(model_path);
    return cfg.mode == ArithmeticMode::kExact ? cost<Rational>(doc, cfg, out) : cost<double>(doc, cfg, out);
  });
}

int cmd_verify(const std::string& model_path, const std::string& channel_path, const RunConfig& cfg,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json model = read_json_file(model_path);
    const Json channel = read_json_file(channel_path);
    return cfg.mode == ArithmeticMode::kExact ? verify<Rational>(model, channel, cfg, out)
                                              : verify<double>(model, channel, cfg, out);
  });
}

int cmd_examples(const std::string& name, const std::string& output_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Json doc;
    if (name == "xor") {
      const InterventionBit f{{{"c1", 0}, {"c2", 1}}};
      doc = to_json(xor_example(f, Dist<Rational>::uniform({"c1", "c2"})));
    } else if (name == "triangle") {
      doc = to_json(triangle_example());
    } else if (name == "chsh") {
      doc = to_json(snap_model(chsh_model(tsirelson_angles())).first);
    } else {
      err << "error: unknown example '" << name << "'; valid names: xor, triangle, chsh\n";
      return int{kExitInvalidInput};
    }
    const std::string text = dump_json(doc);
    if (output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) throw ParseError(output_path, "cannot open for writing");
      file << text;
    }
    return int{kExitOk};
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextuality analysis: global-joint feasibility and contextual information cost"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "exact";
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "Arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--tol", cfg.tolerance, "Float tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--base", cfg.log_base, "Logarithm base")->check(CLI::Range(1.0000001, 1e9));
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };

  std::string model_path, channel_path, example_name, output_path;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Decide whether an empirical model admits a global joint");
  analyze_cmd->add_option("model", model_path, "Empirical model file")->required();
  analyze_cmd->add_option("--cap", cfg.assignment_cap, "Maximum number of global assignments")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  add_common(analyze_cmd);

  CLI::App* cost_cmd = app.add_subcommand("cost", "Minimal deterministic contextual cost of an ontological model");
  cost_cmd->add_option("model", model_path, "Ontological model file")->required();
  cost_cmd->add_option("--prior", cfg.prior, "Context prior: 'uniform' or a prior file");
  add_common(cost_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a channel's mediation and the information bound");
  verify_cmd->add_option("model", model_path, "Ontological model file")->required();
  verify_cmd->add_option("channel", channel_path, "Channel file")->required();
  verify_cmd->add_option("--prior", cfg.prior, "Context prior: 'uniform' or a prior file");
  add_common(verify_cmd);

  CLI::App* examples_cmd = app.add_subcommand("examples", "Write a canonical model file (xor, triangle, chsh)");
  examples_cmd->add_option("name", example_name, "Example name")->required();
  examples_cmd->add_option("output", output_path, "Output path (standard output if omitted)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  cfg.mode = mode == "exact" ? ArithmeticMode::kExact : ArithmeticMode::kFloat;
  cfg.format = format == "json" ? OutputFormat::kJson : OutputFormat::kText;

  if (analyze_cmd->parsed()) return cmd_analyze(model_path, cfg, out, err);
  if (cost_cmd->parsed()) return cmd_cost(model_path, cfg, out, err);
  if (verify_cmd->parsed()) return cmd_verify(model_path, channel_path, cfg, out, err);
  return cmd_examples(example_name, output_path, out, err);
}

}  // namespace contextcost
