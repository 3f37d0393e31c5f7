#include "bkvg/cli.hpp"

#define TOML_HEADER_ONLY 1
#include <CLI11.hpp>
#include <toml.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include "bkvg/error.hpp"
#include "bkvg/report.hpp"

namespace bkvg {

namespace {

struct Settings {
  std::string family = "A";
  double gamma = 1.0;
  double d_re = 0.0, d_im = 0.0, d2_re = 0.0, d2_im = 0.0;
  bool friedrichs = false, friedrichs2 = false;
  int mesh = 1024;
  int theta_steps = 256;
  std::string level = "full";
  bool csv = false;
  std::string out;
  std::string config;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Family parse_family(const std::string& s) {
  if (s == "A") return Family::HardyImaginary;
  if (s == "C") return Family::HardyReal;
  throw InputError("family must be A or C, got '" + s + "'");
}

// Fills every setting the command line left unset.
void apply_config(const std::string& path, Settings& s, const CLI::App& sub) {
  toml::table t;
  try {
    t = toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    throw InputError("cannot read config " + path + ": " + std::string(e.description()));
  }
  auto given = [&](const char* flag) {
    const CLI::Option* o = sub.get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  for (const auto& [key, node] : t) {
    const std::string k(key.str());
    auto num = [&]() {
      if (auto v = node.value<double>()) return *v;
      throw InputError("config key '" + k + "' must be a number");
    };
    auto integer = [&]() {
      if (auto v = node.value<int64_t>()) return static_cast<int>(*v);
      throw InputError("config key '" + k + "' must be an integer");
    };
    auto boolean = [&]() {
      if (auto v = node.value<bool>()) return *v;
      throw InputError("config key '" + k + "' must be a boolean");
    };
    auto str = [&]() {
      if (auto v = node.value<std::string>()) return *v;
      throw InputError("config key '" + k + "' must be a string");
    };
    if (k == "family") { if (!given("--family")) s.family = str(); }
    else if (k == "gamma") { if (!given("--gamma")) s.gamma = num(); }
    else if (k == "d_re") { if (!given("--d-re")) s.d_re = num(); }
    else if (k == "d_im") { if (!given("--d-im")) s.d_im = num(); }
    else if (k == "d2_re") { if (!given("--d2-re")) s.d2_re = num(); }
    else if (k == "d2_im") { if (!given("--d2-im")) s.d2_im = num(); }
    else if (k == "friedrichs") { if (!given("--friedrichs")) s.friedrichs = boolean(); }
    else if (k == "friedrichs2") { if (!given("--friedrichs2")) s.friedrichs2 = boolean(); }
    else if (k == "mesh") { if (!given("--mesh")) s.mesh = integer(); }
    else if (k == "theta_steps") { if (!given("--theta-steps")) s.theta_steps = integer(); }
    else if (k == "level") { if (!given("--level")) s.level = str(); }
    else throw InputError("unknown config key '" + k + "'");
  }
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::UncertifiedConstants:
    case ErrorCode::NoConvergence:
    case ErrorCode::SolveFailure:
    case ErrorCode::EigenFailure:
      return kExitCertification;
    default:
      return kExitInvalidInput;
  }
}

Json family_echo(const std::string& command, const Settings& s) {
  Json e;
  e["command"] = command;
  e["family"] = s.family;
  e["gamma"] = s.gamma;
  return e;
}

ExtensionSpec make_spec(const CertifiedFamily& cf, bool friedrichs, double re, double im) {
  return friedrichs ? ExtensionSpec::friedrichs(cf) : ExtensionSpec::with_coefficient(cf, cplx(re, im));
}

CertifiedFamily certified_family(const Settings& s) {
  CertifiedFamily cf = certify(instantiate(parse_family(s.family), s.gamma));
  return cf;
}

struct Output {
  std::string text;
  std::string csv;  // numrange with --csv and --out: CSV goes to the file, summary to stdout
  int code = kExitOk;
};

Output do_analyze(const Settings& s) {
  CertifiedFamily cf = certified_family(s);
  std::vector<std::string> warnings = cf.constants.notes;
  Output o;
  o.text = dump_report(envelope("analyze", family_echo("analyze", s), analyze_payload(cf), warnings));
  if (!cf.constants.certified) o.code = kExitCertification;
  return o;
}

Output do_check(const Settings& s) {
  CertifiedFamily cf = certified_family(s);
  Json echo = family_echo("check", s);
  echo["friedrichs"] = s.friedrichs;
  echo["d_re"] = s.d_re;
  echo["d_im"] = s.d_im;
  Output o;
  if (!cf.constants.certified) {
    o.text = dump_report(envelope("check", echo, analyze_payload(cf), cf.constants.notes));
    o.code = kExitCertification;
    return o;
  }
  ExtensionSpec spec = make_spec(cf, s.friedrichs, s.d_re, s.d_im);
  AccretivityReport r = analyze_extension(spec);
  std::vector<std::string> warnings;
  std::optional<VdDescription> vd;
  std::optional<double> ray;
  const bool closable = r.closability && r.closability->closable;
  if (r.accretive && closable && spec.domain_dim == 1 && spec.instance().family == Family::HardyImaginary) {
    vd = v_d_description(spec);
    warnings.insert(warnings.end(), vd->warnings.begin(), vd->warnings.end());
  }
  if (r.lower_bound) ray = rayleigh_inf_on_extension(spec);
  o.text = dump_report(envelope("check", echo, extension_payload(spec, r, vd, ray), warnings));
  return o;
}

Output do_compare(const Settings& s) {
  CertifiedFamily cf = certified_family(s);
  if (!cf.constants.certified) throw Error(ErrorCode::UncertifiedConstants, "family constants failed certification");
  ExtensionSpec a = make_spec(cf, s.friedrichs, s.d_re, s.d_im), b = make_spec(cf, s.friedrichs2, s.d2_re, s.d2_im);
  for (const ExtensionSpec* p : {&a, &b}) {
    if (!is_accretive(*p).accretive) throw InputError("compare needs accretive extensions");
    if (!is_closable(*p).closable) throw InputError("compare needs closable extensions");
  }
  Json echo = family_echo("compare", s);
  echo["friedrichs"] = s.friedrichs;
  echo["d_re"] = s.d_re;
  echo["d_im"] = s.d_im;
  echo["friedrichs2"] = s.friedrichs2;
  echo["d2_re"] = s.d2_re;
  echo["d2_im"] = s.d2_im;
  Output o;
  o.text = dump_report(envelope("compare", echo, compare_payload(a, b, compare(a, b)), {}));
  return o;
}

Output do_numrange(const Settings& s) {
  FamilyInstance inst = instantiate(parse_family(s.family), s.gamma);
  MeshSpec mesh = default_range_mesh(s.mesh);
  mesh.validate();
  DiscreteOperator op = discretize(inst, Sign::Plus, mesh);
  NumericalRangeReport r = numerical_range_sweep(op, s.theta_steps);
  Json echo = family_echo("numrange", s);
  echo["mesh"] = s.mesh;
  echo["grading_ratio"] = mesh.grading_ratio;
  echo["theta_steps"] = s.theta_steps;
  echo["sign"] = "plus";
  Output o;
  std::string summary = dump_report(envelope("numrange", echo, range_payload(r, op.size()), {}));
  if (!s.csv) {
    o.text = summary;
  } else if (s.out.empty()) {
    o.text = support_csv(r);
  } else {
    o.csv = support_csv(r);
    o.text = summary;
  }
  return o;
}

Output do_verify(const Settings& s) {
  VerifyLevel level;
  if (s.level == "full") level = VerifyLevel::Full;
  else if (s.level == "quick") level = VerifyLevel::Quick;
  else throw InputError("level must be quick or full");
  std::vector<CriterionResult> results = run_verification(level);
  Json echo;
  echo["command"] = "verify";
  echo["level"] = s.level;
  Output o;
  o.text = dump_report(envelope("verify", echo, verify_payload(results, level), {}));
  for (const auto& r : results)
    if (!r.passed) o.code = kExitVerifyFailed;
  return o;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Accretive extensions of the Hardy-type model operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto common = [&](CLI::App* sub, bool family) {
    sub->add_option("--config", s.config, "TOML config file (default: $BKVG_CONFIG)");
    sub->add_option("--out", s.out, "Write the report to this path");
    auto* j = sub->add_flag("--json", "JSON output (default)");
    auto* c = sub->add_flag("--csv", s.csv, "CSV output (numrange only)");
    j->excludes(c);
    if (family) {
      sub->add_option("--family", s.family, "A or C");
      sub->add_option("--gamma", s.gamma, "Coupling constant, > 0");
    }
  };
  auto* analyze = app.add_subcommand("analyze", "Kernels, regime and certified constants of a family");
  common(analyze, true);
  auto* check = app.add_subcommand("check", "Accretivity, closability, B-matrix and bounds of one extension");
  common(check, true);
  check->add_option("--d-re", s.d_re, "Re d");
  check->add_option("--d-im", s.d_im, "Im d");
  check->add_flag("--friedrichs", s.friedrichs, "Use the Friedrichs extension");
  auto* cmp = app.add_subcommand("compare", "Order of the real parts of two extensions");
  common(cmp, true);
  cmp->add_option("--d-re", s.d_re, "Re d of the first extension");
  cmp->add_option("--d-im", s.d_im, "Im d of the first extension");
  cmp->add_option("--d2-re", s.d2_re, "Re d of the second extension");
  cmp->add_option("--d2-im", s.d2_im, "Im d of the second extension");
  cmp->add_flag("--friedrichs", s.friedrichs, "First extension is Friedrichs");
  cmp->add_flag("--friedrichs2", s.friedrichs2, "Second extension is Friedrichs");
  auto* nr = app.add_subcommand("numrange", "Support function of the discretized numerical range");
  common(nr, true);
  nr->add_option("--mesh", s.mesh, "Interior node count");
  nr->add_option("--theta-steps", s.theta_steps, "Number of rotation angles");
  auto* ver = app.add_subcommand("verify", "Run the acceptance oracles");
  common(ver, false);
  ver->add_option("--level", s.level, "quick or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    std::string cfg = s.config;
    if (cfg.empty())
      if (const char* env = std::getenv("BKVG_CONFIG"); env && *env) cfg = env;
    if (!cfg.empty()) apply_config(cfg, s, *sub);
    if (s.csv && name != "numrange") throw InputError("--csv is only supported by numrange");

    Output o;
    if (name == "analyze") o = do_analyze(s);
    else if (name == "check") o = do_check(s);
    else if (name == "compare") o = do_compare(s);
    else if (name == "numrange") o = do_numrange(s);
    else o = do_verify(s);

    if (!o.csv.empty()) {
      if (!write_file(s.out, o.csv)) throw InputError("cannot write " + s.out);
      out << o.text;
    } else if (!s.out.empty()) {
      if (!write_file(s.out, o.text)) throw InputError("cannot write " + s.out);
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace bkvg
