#include "cohlab/cli.hpp"

#include "cohlab/coherence.hpp"
#include "cohlab/parallel.hpp"
#include "cohlab/random.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>

#ifndef COHLAB_VERSION
#define COHLAB_VERSION "dev"
#endif

namespace cohlab {

namespace {

std::string flag(bool b) { return b ? "true" : "false"; }

DensityMatrix load_state(const RunConfig& c) {
  if (!c.state) throw Error(ErrorCode::kParamOutOfRange, std::string(to_string(c.command)) + " needs --state");
  return state_from_json(read_json_file(*c.state));
}

UnitaryEnsemble load_ensemble(const RunConfig& c) {
  if (!c.ensemble) throw Error(ErrorCode::kParamOutOfRange, std::string(to_string(c.command)) + " needs --ensemble");
  return ensemble_from_json(read_json_file(*c.ensemble));
}

void require_copies(const RunConfig& c) {
  if (c.copies < 1) throw Error(ErrorCode::kParamOutOfRange, "--copies must be >= 1");
}

Json base_manifest(const RunConfig& c) {
  Json params{{"dim_cap", c.dim_cap}};
  if (c.state) params["state"] = c.state->string();
  if (c.ensemble) params["ensemble"] = c.ensemble->string();
  return Json{{"tool", "cohlab"},
              {"version", COHLAB_VERSION},
              {"command", std::string(to_string(c.command))},
              {"master_seed", c.seed},
              {"params", std::move(params)}};
}

Report coherence_report(const RunConfig& c) {
  const DensityMatrix rho = load_state(c);
  const double c_r = relative_entropy_coherence(rho);
  const double c_l1 = l1_coherence(rho);
  const double witness = incoherent_distance_witness(rho).epsilon_up;
  Report r;
  r.columns = {"dim", "c_r", "c_l1", "dephasing_distance"};
  r.rows.push_back({std::to_string(rho.dim()), format_double(c_r), format_double(c_l1), format_double(witness)});
  r.body = Json{{"dim", rho.dim()}, {"c_r", c_r}, {"c_l1", c_l1}, {"dephasing_distance", witness}};
  return r;
}

Report channel_report(const RunConfig& c) {
  const DensityMatrix rho = load_state(c);
  const UnitaryEnsemble e = load_ensemble(c);
  const DensityMatrix out = apply_ensemble(e, rho);
  const double witness = incoherent_distance_witness(out).epsilon_up;
  const double entropy = von_neumann_entropy(out);
  const double c_r = relative_entropy_coherence(out);
  Report r;
  r.columns = {"dim", "N", "all_incoherent", "output_entropy", "output_c_r", "dephasing_distance"};
  r.rows.push_back({std::to_string(out.dim()), std::to_string(e.size()), flag(e.all_incoherent()),
                    format_double(entropy), format_double(c_r), format_double(witness)});
  r.body = Json{{"dim", out.dim()},
                {"N", e.size()},
                {"all_incoherent", e.all_incoherent()},
                {"output_entropy", entropy},
                {"output_c_r", c_r},
                {"dephasing_distance", witness},
                {"output", state_to_json(out)}};
  return r;
}

Report exchange_report(const RunConfig& c) {
  const DensityMatrix rho = load_state(c);
  const UnitaryEnsemble e = load_ensemble(c);
  const EnsembleEntropyBounds b = ensemble_entropy_bounds(e, rho);
  const double via_purification = entropy_exchange_via_purification(e, rho);
  Report r;
  r.columns = {"dim", "N", "entropy_exchange", "entropy_exchange_purification", "mixing_entropy", "log2_N",
               "chain_holds"};
  r.rows.push_back({std::to_string(e.dim()), std::to_string(e.size()), format_double(b.exchange),
                    format_double(via_purification), format_double(b.mixing), format_double(b.log_size),
                    flag(b.holds)});
  r.body = Json{{"dim", e.dim()},
                {"N", e.size()},
                {"entropy_exchange", b.exchange},
                {"entropy_exchange_purification", via_purification},
                {"mixing_entropy", b.mixing},
                {"log2_N", b.log_size},
                {"chain_holds", b.holds}};
  return r;
}

Report typical_report(const RunConfig& c) {
  require_copies(c);
  const DensityMatrix rho = load_state(c);
  const double delta = c.delta.value_or(c.eps);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorCode::kParamOutOfRange, "--delta must be > 0");
  const TypicalSubspace ts = typical_subspace(rho, c.copies, delta);
  const TypicalityReport p = typicality_properties(ts, rho);
  const TypicalSet set{ts.n(), ts.delta(), ts.base().entropy(), ts.members(), ts.mass()};
  Report r;
  r.columns = {"n", "delta", "H", "member_count", "mass", "dim_bounds_ok", "eig_min", "eig_max", "sandwich_ok"};
  r.rows.push_back({std::to_string(set.n), format_double(set.delta), format_double(set.entropy),
                    std::to_string(set.members.size()), format_double(set.mass), flag(p.dim_bounds_ok),
                    format_double(p.eig_min), format_double(p.eig_max), flag(p.sandwich_ok)});
  r.body = typical_set_to_json(set);
  r.body["properties"] = Json{{"epsilon", p.epsilon},
                              {"dim_lower", p.dim_lower},
                              {"dim_upper", p.dim_upper},
                              {"dim_bounds_ok", p.dim_bounds_ok},
                              {"sandwich_lower", p.sandwich_lower},
                              {"sandwich_upper", p.sandwich_upper},
                              {"eig_min", p.eig_min},
                              {"eig_max", p.eig_max},
                              {"sandwich_ok", p.sandwich_ok}};
  return r;
}

Report lemma1_report(const RunConfig& c) {
  require_copies(c);
  const DensityMatrix rho = load_state(c);
  UnitaryEnsemble e = load_ensemble(c);
  // A single-copy ensemble is applied copy-wise.
  if (c.copies > 1 && e.dim() == rho.dim()) e = tensor_power(e, c.copies);
  const Lemma1Report l = verify_lemma1(e, rho, c.copies);
  Report r;
  r.columns = {"n", "eps", "entropy_exchange", "bound", "holds", "output_entropy", "dephased_entropy",
               "copies_dephased", "copies_entropy", "dephasing_gap"};
  r.rows.push_back({std::to_string(l.n), format_double(l.eps), format_double(l.exchange), format_double(l.bound),
                    flag(l.holds), format_double(l.output_entropy), format_double(l.dephased_entropy),
                    format_double(l.copies_dephased), format_double(l.copies_entropy),
                    format_double(l.dephasing_gap)});
  r.body = Json{{"n", l.n},
                {"eps", l.eps},
                {"entropy_exchange", l.exchange},
                {"bound", l.bound},
                {"holds", l.holds},
                {"output_entropy", l.output_entropy},
                {"dephased_entropy", l.dephased_entropy},
                {"copies_dephased", l.copies_dephased},
                {"copies_entropy", l.copies_entropy},
                {"dephasing_gap", l.dephasing_gap},
                {"gap_ok", l.gap_ok},
                {"dephased_ok", l.dephased_ok},
                {"continuity_ok", l.continuity_ok},
                {"araki_lieb_ok", l.araki_lieb_ok}};
  return r;
}

Report erase_report(const RunConfig& c) {
  require_copies(c);
  const DensityMatrix rho = load_state(c);
  // Same cell seed as seed index 0 of a rates run.
  const std::uint64_t cell = derive_seed(c.seed, {c.copies, 0});
  ErasureReport e;
  if (c.size) {
    const TypicalSubspace ts = typical_subspace(rho, c.copies, c.eps);
    e = verify_eraser(sample_eraser(rho, ts, c.eps, *c.size, cell), rho);
  } else {
    e = verify_eraser(sample_eraser(rho, c.copies, c.eps, cell), rho);
  }
  Report r;
  r.columns = erasure_columns();
  r.rows.push_back(erasure_row(e));
  r.body = Json{{"reports", Json::array({erasure_report_to_json(e)})}};
  return r;
}

Report chernoff_report(const RunConfig& c) {
  ChernoffConfig cc;
  cc.dim = c.dim;
  cc.a = c.a;
  cc.eps = c.eps;
  cc.samples = c.size.value_or(16);
  cc.trials = c.trials;
  cc.seed = c.seed;
  cc.spread = c.spread;
  cc.threads = c.threads;
  const ChernoffResult res = chernoff_experiment(cc);
  Report r;
  r.columns = {"dim", "a", "eps", "N", "trials", "successes", "empirical_success", "standard_error", "bound"};
  r.rows.push_back({std::to_string(res.dim), format_double(res.a), format_double(cc.eps), std::to_string(cc.samples),
                    std::to_string(res.trials), std::to_string(res.successes), format_double(res.empirical_success),
                    format_double(res.standard_error), format_double(res.bound)});
  r.body = Json{{"dim", res.dim},
                {"a", res.a},
                {"eps", cc.eps},
                {"N", cc.samples},
                {"trials", res.trials},
                {"successes", res.successes},
                {"empirical_success", res.empirical_success},
                {"standard_error", res.standard_error},
                {"bound", res.bound}};
  return r;
}

Report rates_report(const RunConfig& c) {
  require_copies(c);
  const DensityMatrix rho = load_state(c);
  RateCurveConfig rc;
  rc.eps = c.eps;
  rc.n_min = c.n_min;
  rc.n_max = c.copies;
  rc.seeds = c.seeds;
  rc.master_seed = c.seed;
  rc.threads = c.threads;
  const RateCurve curve = rate_curve(rho, rc);

  Report r;
  r.columns = erasure_columns();
  Json reports = Json::array();
  for (const auto& e : curve.reports) {
    r.rows.push_back(erasure_row(e));
    reports.push_back(erasure_report_to_json(e));
  }
  Json points = Json::array();
  for (const auto& p : curve.points) {
    Json point{{"n", p.n},
               {"formula_N", p.formula_size},
               {"formula_rate", p.formula_rate},
               {"formula_successes", p.formula_successes},
               {"best_N", nullptr},
               {"best_rate", nullptr},
               {"median_exchange_per_copy", p.median_exchange_per_copy},
               {"tested_N", p.tested_sizes}};
    if (p.best_size) {
      point["best_N"] = *p.best_size;
      point["best_rate"] = p.best_rate;
    }
    points.push_back(std::move(point));
  }
  r.body = Json{{"reports", std::move(reports)}, {"points", std::move(points)}};
  return r;
}

void add_params(Json& params, const RunConfig& c) {
  switch (c.command) {
    case Command::kCoherence:
    case Command::kChannel:
    case Command::kExchange:
      break;
    case Command::kTypical:
      params["copies"] = c.copies;
      params["delta"] = c.delta.value_or(c.eps);
      break;
    case Command::kLemma1:
      params["copies"] = c.copies;
      break;
    case Command::kErase:
      params["copies"] = c.copies;
      params["eps"] = c.eps;
      if (c.size) params["N"] = *c.size;
      break;
    case Command::kChernoff:
      params["dim"] = c.dim;
      params["a"] = c.a;
      params["eps"] = c.eps;
      params["N"] = c.size.value_or(16);
      params["trials"] = c.trials;
      params["spread"] = c.spread;
      break;
    case Command::kRates:
      params["n_min"] = c.n_min;
      params["copies"] = c.copies;
      params["eps"] = c.eps;
      params["seeds"] = c.seeds;
      break;
  }
}

std::string manifest_value(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::kCoherence: return "coherence";
    case Command::kChannel: return "channel";
    case Command::kExchange: return "exchange";
    case Command::kTypical: return "typical";
    case Command::kLemma1: return "lemma1";
    case Command::kErase: return "erase";
    case Command::kChernoff: return "chernoff";
    case Command::kRates: return "rates";
  }
  return "unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionOverflow:
    case ErrorCode::kTooLarge:
      return 3;
    case ErrorCode::kNumericalFailure:
      return 4;
    case ErrorCode::kIoError:
      return 5;
    default:
      return 2;
  }
}

Report build_report(const RunConfig& c) {
  if (c.dim_cap < 1) throw Error(ErrorCode::kParamOutOfRange, "--dim-cap must be >= 1");
  if (c.threads < 1) throw Error(ErrorCode::kParamOutOfRange, "--threads must be >= 1");
  set_dimension_cap(c.dim_cap);

  Report r;
  switch (c.command) {
    case Command::kCoherence: r = coherence_report(c); break;
    case Command::kChannel: r = channel_report(c); break;
    case Command::kExchange: r = exchange_report(c); break;
    case Command::kTypical: r = typical_report(c); break;
    case Command::kLemma1: r = lemma1_report(c); break;
    case Command::kErase: r = erase_report(c); break;
    case Command::kChernoff: r = chernoff_report(c); break;
    case Command::kRates: r = rates_report(c); break;
  }
  r.manifest = base_manifest(c);
  add_params(r.manifest["params"], c);
  return r;
}

std::string render(const Report& report, Format format) {
  if (format == Format::kStructured) {
    return Json{{"manifest", report.manifest}, {"report", report.body}}.dump(2) + "\n";
  }
  std::string text;
  for (const auto& [key, value] : report.manifest.items()) {
    if (key == "params") {
      for (const auto& [pk, pv] : value.items()) text += "# " + pk + ": " + manifest_value(pv) + "\n";
    } else {
      text += "# " + key + ": " + manifest_value(value) + "\n";
    }
  }
  text += csv_line(report.columns);
  for (const auto& row : report.rows) text += csv_line(row);
  return text;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = render(build_report(config), config.format);
    if (config.out) {
      write_text_file(*config.out, text);
    } else {
      out << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "cohlab: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::bad_alloc&) {
    err << "cohlab: out of memory\n";
    return exit_code(ErrorCode::kDimensionOverflow);
  }
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence erasure laboratory"};
  app.set_version_flag("--version", COHLAB_VERSION);
  app.require_subcommand(1);

  RunConfig c;
  c.threads = default_thread_count();
  if (const char* env = std::getenv(kDimCapEnv)) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      c.dim_cap = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      err << "cohlab: " << kDimCapEnv << " must be a positive integer\n";
      return 2;
    }
  }

  std::string format = "tabular";
  std::optional<std::string> state, ensemble, outpath;
  std::optional<std::uint64_t> size;
  std::optional<double> delta;
  std::map<CLI::App*, Command> commands;

  auto add = [&](const char* name, const char* help, Command cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands[sub] = cmd;
    sub->add_option("--out", outpath, "Output file (default stdout)");
    sub->add_option("--format", format, "tabular or structured")->check(CLI::IsMember({"tabular", "structured"}));
    sub->add_option("--threads", c.threads, "Worker threads");
    sub->add_option("--dim-cap", c.dim_cap, std::string("Dimension cap (env ") + kDimCapEnv + ")");
    return sub;
  };
  auto with_state = [&](CLI::App* sub) { sub->add_option("--state", state, "State document")->required(); };
  auto with_ensemble = [&](CLI::App* sub) { sub->add_option("--ensemble", ensemble, "Ensemble document")->required(); };

  CLI::App* s = add("coherence", "Coherence measures of a state", Command::kCoherence);
  with_state(s);

  s = add("channel", "Apply a random-unitary ensemble to a state", Command::kChannel);
  with_state(s);
  with_ensemble(s);

  s = add("exchange", "Entropy exchange of an ensemble on a state", Command::kExchange);
  with_state(s);
  with_ensemble(s);

  s = add("typical", "Typical subspace of n copies", Command::kTypical);
  with_state(s);
  s->add_option("--copies", c.copies, "Number of copies n")->required();
  s->add_option("--delta", delta, "Typicality window")->required();

  s = add("lemma1", "Entropy-exchange lower bound on n copies", Command::kLemma1);
  with_state(s);
  with_ensemble(s);
  s->add_option("--copies", c.copies, "Number of copies n");

  s = add("erase", "Sample and verify one eraser instance", Command::kErase);
  with_state(s);
  s->add_option("--copies", c.copies, "Number of copies n")->required();
  s->add_option("--eps", c.eps, "Error parameter in (0, 1/2)")->required();
  s->add_option("--N", size, "Ensemble size (default ceil(2^{n(C_r + 3 eps)}))");
  s->add_option("--seed", c.seed, "Master seed");

  s = add("chernoff", "Operator Chernoff experiment", Command::kChernoff);
  s->add_option("--dim", c.dim, "Operator dimension");
  s->add_option("--a", c.a, "Mean scale, E X = a I");
  s->add_option("--eps", c.eps, "Relative deviation in (0, 1/2)")->required();
  s->add_option("--N", size, "Samples per trial");
  s->add_option("--trials", c.trials, "Number of trials");
  s->add_option("--spread", c.spread, "Seed operator spread in [0, 1]");
  s->add_option("--seed", c.seed, "Master seed");

  s = add("rates", "Finite-n erasure rate curve", Command::kRates);
  with_state(s);
  s->add_option("--copies", c.copies, "Largest n")->required();
  s->add_option("--n-min", c.n_min, "Smallest n");
  s->add_option("--eps", c.eps, "Error parameter in (0, 1/2)")->required();
  s->add_option("--seeds", c.seeds, "Seeds per ensemble size");
  s->add_option("--seed", c.seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) c.command = cmd;
  }
  c.format = format == "structured" ? Format::kStructured : Format::kTabular;
  if (state) c.state = *state;
  if (ensemble) c.ensemble = *ensemble;
  if (outpath) c.out = *outpath;
  c.size = size;
  c.delta = delta;
  return run(c, out, err);
}

}  // namespace cohlab
