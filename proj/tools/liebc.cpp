// liebc: cohomology diamonds, class membership and pluriclosed flow on compact
// Lie groups with invariant complex structures.
//
// Exit codes: 0 pass, 1 mismatch or failed check, 2 usage or input error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "liebc/json_io.hpp"
#include "liebc/suite.hpp"

using namespace liebc;

namespace {

struct Config {
  std::string model = "su3";
  std::string structure;
  std::string format = "json";
  std::string out;
  std::string data_dir;
  bool timing = true;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FieldElement parse_real(const std::string& text) {
  std::string t = text;
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  auto star = t.find("sqrt3");
  if (star == std::string::npos) return FieldElement(Rational::parse(t));
  std::string coef = t.substr(0, star);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  if (coef.empty() || coef == "+") coef = "1";
  if (coef == "-") coef = "-1";
  return FieldElement(0, Rational::parse(coef), 0, 0);
}

// "", "plus", "minus" or "param:a,b" with a, b rationals or rational multiples of sqrt3.
StructureSpec parse_structure(const std::string& s) {
  StructureSpec spec;
  if (s.empty() || s == "standard") return spec;
  spec.kind = s == "plus" ? StructureKind::plus : StructureKind::minus;
  if (s == "plus" || s == "minus") return spec;
  if (s.rfind("param:", 0) == 0) {
    auto body = s.substr(6);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw Usage("--structure param:a,b needs two values");
    try {
      spec.kind = StructureKind::parameter;
      spec.a = parse_real(body.substr(0, comma));
      spec.b = parse_real(body.substr(comma + 1));
      return spec;
    } catch (const std::exception&) {
      throw Usage("cannot parse the parameters in " + s);
    }
  }
  throw Usage("unknown structure '" + s + "' (expected plus, minus or param:a,b)");
}

std::string structure_name(const LieAlgebraModel& m, const StructureSpec& spec) {
  switch (spec.kind) {
    case StructureKind::parameter: return "param";
    case StructureKind::minus: return "minus";
    case StructureKind::plus: return "plus";
    case StructureKind::standard: return m.name == "su3" ? "standard" : "plus";
  }
  return "?";
}

class Reporter {
 public:
  Reporter(const Config& cfg, std::string command) : cfg_(cfg), start_(std::chrono::steady_clock::now()) {
    report_["command"] = std::move(command);
    report_["inputs"] = Json::object();
    report_["results"] = Json::object();
    report_["warnings"] = Json::array();
  }
  Json& inputs() { return report_["inputs"]; }
  Json& results() { return report_["results"]; }
  void warn(const std::string& w) { report_["warnings"].push_back(w); }
  std::ostringstream& text() { return text_; }

  void emit() {
    if (cfg_.timing)
      report_["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::string body;
    if (cfg_.format == "json") {
      body = report_.dump(2) + "\n";
    } else {
      body = text_.str();
      for (const auto& w : report_["warnings"]) body += "warning: " + w.get<std::string>() + "\n";
    }
    if (cfg_.out.empty()) {
      std::cout << body;
    } else {
      std::ofstream f(cfg_.out);
      if (!f) throw Usage("cannot write " + cfg_.out);
      f << body;
    }
  }

 private:
  const Config& cfg_;
  Json report_;
  std::ostringstream text_;
  std::chrono::steady_clock::time_point start_;
};

struct Setup {
  std::shared_ptr<const LieAlgebraModel> model;
  StructureSpec spec;
  ComplexStructureChoice cs;
  std::unique_ptr<Bicomplex> bc;
};

Setup setup(const Config& cfg) {
  Setup s;
  s.model = load_model(cfg.model);
  s.spec = parse_structure(cfg.structure);
  s.cs = make_structure(s.model, s.spec);
  s.bc = std::make_unique<Bicomplex>(derive_structure_equations(s.cs));
  return s;
}

void echo_inputs(Reporter& rep, const Config& cfg, const Setup& s) {
  rep.inputs()["model"] = s.model->name;
  rep.inputs()["model_source"] = cfg.model;
  rep.inputs()["structure"] = structure_name(*s.model, s.spec);
  rep.inputs()["structure_label"] = s.cs.label;
}

std::string data_dir(const Config& cfg) {
  if (!cfg.data_dir.empty()) return cfg.data_dir;
  if (const char* env = std::getenv("LIEBC_DATA_DIR")) return env;
  return LIEBC_DATA_DIR;
}

int cmd_models(const Config& cfg, const std::string& dump) {
  Reporter rep(cfg, "models");
  if (!dump.empty()) {
    auto m = load_model(dump);
    rep.results()["model"] = to_json(*m);
    rep.text() << to_json(*m).dump(2) << "\n";
    rep.emit();
    return 0;
  }
  Json list = Json::array();
  for (const auto& name : builtin_model_names()) {
    auto m = builtin_model(name);
    Json structures = name == "su3" ? Json::array({"standard"}) : Json::array({"plus", "minus"});
    Json torus = Json::array();
    for (int t : m->torus) torus.push_back(t + 1);
    list.push_back({{"name", name}, {"dim", m->dim}, {"n", m->dim / 2}, {"torus", torus}, {"structures", structures}});
    rep.text() << name << "  dim " << m->dim << "  n " << m->dim / 2 << "  structures "
               << (name == "su3" ? "standard" : "plus, minus") << "\n";
  }
  rep.results()["models"] = list;
  rep.emit();
  return 0;
}

int cmd_verify(const Config& cfg, bool skip_duality) {
  Reporter rep(cfg, "verify");
  auto model = load_model(cfg.model);
  auto spec = parse_structure(cfg.structure);
  rep.inputs()["model"] = model->name;
  rep.inputs()["model_source"] = cfg.model;
  rep.inputs()["structure"] = structure_name(*model, spec);
  SuiteOptions opt;
  opt.duality = !skip_duality;
  opt.duality_representatives = model->dim <= 10;
  auto checks = run_verify_suite(model, spec, opt);
  bool pass = true;
  Json list = Json::array();
  for (const auto& c : checks) {
    pass = pass && c.pass;
    list.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    rep.text() << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
  }
  rep.results()["checks"] = list;
  rep.results()["pass"] = pass;
  rep.text() << (pass ? "all checks passed" : "some checks failed") << "\n";
  rep.emit();
  return pass ? 0 : 1;
}

int cmd_diamond(const Config& cfg, const std::string& kind_text, const std::string& expect, bool with_reps) {
  auto kind = parse_kind(kind_text);
  if (!kind) throw Usage("unknown kind '" + kind_text + "'");
  if (!expect.empty() && expect != "paper") throw Usage("--expect only accepts 'paper'");
  Reporter rep(cfg, "diamond");
  auto s = setup(cfg);
  echo_inputs(rep, cfg, s);
  rep.inputs()["kind"] = kind_name(*kind);
  Diamond d = diamond(*s.bc, *kind, s.model->name);
  rep.results()["diamond"] = to_json(d);
  rep.results()["euler_characteristic"] = euler_characteristic(d);
  rep.text() << s.model->name << " " << kind_name(*kind) << " (" << s.cs.label << ")\n" << render_diamond(d);

  if (with_reps && *kind != CohomologyKind::de_rham) {
    Json reps = Json::array();
    for (int p = 0; p <= d.n; ++p)
      for (int q = 0; q <= d.n; ++q) {
        if (d.table[p][q] == 0) continue;
        auto r = compute_cohomology(*s.bc, *kind, p, q);
        Json forms = Json::array();
        for (const auto& f : r.representatives) {
          forms.push_back(to_json(f));
          rep.text() << "  (" << p << "," << q << ")  " << f.to_string() << "\n";
        }
        reps.push_back({{"p", p}, {"q", q}, {"forms", forms}});
      }
    rep.results()["representatives"] = reps;
  }

  int code = 0;
  auto golden = load_golden(data_dir(cfg), s.model->name, *kind);
  std::string sname = structure_name(*s.model, s.spec);
  bool applies = golden && std::find(golden->structures.begin(), golden->structures.end(), sname) !=
                               golden->structures.end();
  if (!applies) {
    rep.results()["golden"] = "none";
    rep.warn("no paper golden for " + s.model->name + " " + kind_name(*kind) + " (" + sname + "); table is computed only");
  } else {
    Json mismatches = Json::array();
    for (int p = 0; p <= d.n; ++p)
      for (int q = 0; q <= d.n; ++q)
        if (golden->diamond.table[p][q] != d.table[p][q])
          mismatches.push_back({{"p", p}, {"q", q}, {"expected", golden->diamond.table[p][q]}, {"computed", d.table[p][q]}});
    rep.results()["golden"] = mismatches.empty() ? "match" : "mismatch";
    rep.results()["mismatches"] = mismatches;
    rep.text() << "paper golden: " << (mismatches.empty() ? "match" : "MISMATCH") << "\n";
    for (const auto& m : mismatches)
      rep.text() << "  h(" << m["p"] << "," << m["q"] << ") expected " << m["expected"] << " computed " << m["computed"]
                 << "\n";
    if (!expect.empty() && !mismatches.empty()) code = 1;
  }
  rep.emit();
  return code;
}

int cmd_class(const Config& cfg, const std::string& form_path, const std::string& kind_text, bool bf) {
  auto kind = parse_kind(kind_text);
  if (!kind) throw Usage("unknown kind '" + kind_text + "'");
  if (form_path.empty() == !bf) throw Usage("give exactly one of --form FILE or --bf");
  Reporter rep(cfg, "class");
  auto s = setup(cfg);
  echo_inputs(rep, cfg, s);
  rep.inputs()["kind"] = kind_name(*kind);
  const int n = s.bc->n();

  std::vector<Form> forms;
  if (bf) {
    forms.push_back(kahler_form(biinvariant_metric(s.cs)));
    rep.inputs()["form"] = "omega_BF";
  } else {
    Json j = read_json_file(form_path);
    rep.inputs()["form"] = form_path;
    if (j.is_object() && j.contains("forms"))
      for (const auto& f : j.at("forms")) forms.push_back(form_from_json(f, n));
    else
      forms.push_back(form_from_json(j, n));
  }

  Json list = Json::array();
  bool all_closed = true;
  std::vector<std::vector<FieldElement>> coords;
  std::optional<std::pair<int, int>> common;
  bool same_degree = true;
  for (std::size_t k = 0; k < forms.size(); ++k) {
    const Form& x = forms[k];
    auto bd = x.bidegree();
    if (!bd) throw Error(ErrorCode::bidegree_mismatch, "form " + std::to_string(k + 1) + " is not homogeneous");
    if (common && *common != *bd) same_degree = false;
    common = bd;
    ClassVerdict v = class_of(*s.bc, x, *kind);
    Json entry = {{"p", bd->first}, {"q", bd->second}, {"closed", v.closed}};
    rep.text() << "form " << k + 1 << " (" << bd->first << "," << bd->second << "): ";
    if (!v.closed) {
      all_closed = false;
      entry["obstruction"] = to_json(v.obstruction);
      rep.text() << "not closed, obstruction " << v.obstruction.to_string() << "\n";
    } else {
      Json c = Json::array();
      for (const auto& x : v.coordinates) c.push_back(to_json(x));
      entry["coordinates"] = c;
      entry["exact"] = v.exact();
      coords.push_back(v.coordinates);
      rep.text() << (v.exact() ? "exact" : "nonzero class") << ", coordinates [";
      for (std::size_t i = 0; i < v.coordinates.size(); ++i) rep.text() << (i ? ", " : "") << v.coordinates[i].to_string();
      rep.text() << "]\n";
    }
    list.push_back(entry);
  }
  rep.results()["forms"] = list;
  if (common) {
    auto group = compute_cohomology(*s.bc, *kind, common->first, common->second);
    Json reps = Json::array();
    for (const auto& f : group.representatives) reps.push_back(to_json(f));
    rep.results()["group_dimension"] = group.dimension;
    rep.results()["representatives"] = reps;
  }
  if (forms.size() > 1 && all_closed && same_degree) {
    ExactMatrix m(coords.size(), coords.front().size());
    for (std::size_t r = 0; r < coords.size(); ++r)
      for (std::size_t c = 0; c < coords[r].size(); ++c) m(r, c) = coords[r][c];
    bool independent = rank(m) == coords.size();
    rep.results()["independent"] = independent;
    rep.text() << (independent ? "classes are linearly independent" : "classes are linearly dependent") << "\n";
  }
  rep.emit();
  return all_closed ? 0 : 1;
}

struct FlowArgs {
  double eps = 0;
  std::uint64_t seed = 1;
  double scale = 1;
  FlowOptions opt;
  std::string mode = "float";
  std::string trajectory;
  bool keep_lambda = true;
};

int cmd_flow(const Config& cfg, const FlowArgs& a) {
  if (a.mode != "float" && a.mode != "exact") throw Usage("--mode must be exact or float");
  if (a.eps < 0) throw Usage("--eps must be non-negative");
  if (!(a.scale > 0)) throw Usage("--scale must be positive");
  Reporter rep(cfg, "flow");
  auto s = setup(cfg);
  echo_inputs(rep, cfg, s);
  if (!s.cs.isotropic) throw Error(ErrorCode::invalid_argument, "the flow needs an isotropic structure (a Bismut flat reference)");
  rep.inputs()["eps"] = a.eps;
  rep.inputs()["seed"] = a.seed;
  rep.inputs()["scale"] = a.scale;
  rep.inputs()["dt"] = a.opt.dt;
  rep.inputs()["steps"] = a.opt.max_steps;
  rep.inputs()["tol"] = a.opt.tol;
  rep.inputs()["mode"] = a.mode;

  ExactMatrix ref = biinvariant_metric(s.cs);
  if (a.mode == "exact") {
    rep.results()["reference_pluriclosed_exact"] = is_pluriclosed(*s.bc, ref);
    rep.results()["reference_ricci_zero_exact"] = bismut_ricci_11(*s.bc, ref).is_zero();
  }
  PerturbationSampler sampler(*s.bc, ref, s.cs.torus_slot);
  ComplexMatrix h0 = a.scale * to_numeric(ref) + sampler.sample(a.eps, a.seed, a.keep_lambda);
  PluriclosedFlow flow(*s.bc, ref, s.cs.torus_slot);
  rep.results()["pluriclosed_kernel_dimension"] = sampler.kernel_dimension();

  FlowOptions opt = a.opt;
  opt.record_every = a.trajectory.empty() ? 0 : opt.record_every;
  int code = 0;
  try {
    FlowResult r = flow.run(h0, opt);
    const FlowState& last = r.trajectory.back();
    rep.results()["verdict"] = verdict_name(r.verdict);
    rep.results()["lambda"] = r.lambda;
    rep.results()["initial_lambda"] = r.initial_lambda;
    rep.results()["distance"] = r.distance;
    rep.results()["final_time"] = last.time;
    rep.results()["ricci_norm"] = last.ricci_norm;
    rep.results()["steps"] = r.steps;
    rep.results()["halvings"] = r.halvings;
    rep.results()["max_pluriclosed_residual"] = r.max_residual;
    rep.results()["max_exactness_residual"] = r.max_exactness;
    rep.results()["lambda_drift_per_time"] = r.lambda_drift;
    rep.results()["final_metric"] = to_json(last.metric);
    rep.text() << "verdict " << verdict_name(r.verdict) << "  lambda " << r.lambda << "  (initial " << r.initial_lambda
               << ")\nsteps " << r.steps << "  t " << last.time << "  |Ric| " << last.ricci_norm << "\nmax residual "
               << r.max_residual << "  max exactness " << r.max_exactness << "  lambda drift/time " << r.lambda_drift
               << "\n";
    if (r.max_residual > 10 * opt.tol) rep.warn("pluriclosed residual exceeded 10 tol along the trajectory");
    if (r.verdict != FlowVerdict::converged) code = 1;
    if (!a.trajectory.empty()) {
      std::ofstream f(a.trajectory);
      if (!f) throw Usage("cannot write " + a.trajectory);
      for (const auto& st : r.trajectory) f << to_json(st).dump() << "\n";
    }
  } catch (const PositivityLoss& e) {
    rep.results()["verdict"] = "positivity_loss";
    rep.results()["last_state"] = to_json(e.last_state());
    rep.text() << e.what() << "\n";
    code = 1;
  }
  rep.emit();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology and pluriclosed flow on compact Lie groups with invariant complex structures"};
  app.fallthrough();
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--model", cfg.model, "builtin model (su3, spin5, g2) or file:PATH");
  app.add_option("--structure", cfg.structure, "plus, minus or param:a,b");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "ascii"}));
  app.add_option("--out", cfg.out, "write the report to this file");
  app.add_option("--data", cfg.data_dir, "directory holding golden/ tables");
  app.add_flag("!--no-timing", cfg.timing, "omit the timing field");

  std::string dump;
  auto* models = app.add_subcommand("models", "list builtin models, or dump one as a model file");
  models->add_option("--dump", dump, "model name or file:PATH to print as JSON");

  bool skip_duality = false;
  auto* verify = app.add_subcommand("verify", "run the consistency suite");
  verify->add_flag("--skip-duality", skip_duality, "skip the Bott-Chern/Aeppli duality check");

  std::string kind = "dolbeault", expect;
  bool reps = false;
  auto* dia = app.add_subcommand("diamond", "compute a cohomology diamond");
  dia->add_option("--kind", kind, "dolbeault, bott_chern, aeppli or de_rham");
  dia->add_option("--expect", expect, "compare against the stored published table ('paper')");
  dia->add_flag("--representatives", reps, "include canonical representatives");

  std::string form_path, class_kind = "aeppli";
  bool bf = false;
  auto* cls = app.add_subcommand("class", "cohomology class of a form");
  cls->add_option("--form", form_path, "JSON form, or {\"forms\": [...]}");
  cls->add_option("--kind", class_kind, "dolbeault, bott_chern, aeppli or de_rham");
  cls->add_flag("--bf", bf, "use the Kahler form of the bi-invariant metric");

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "run the pluriclosed flow from a perturbed Bismut flat metric");
  flow->add_option("--eps", fa.eps, "perturbation size");
  flow->add_option("--seed", fa.seed, "sampler seed");
  flow->add_option("--scale", fa.scale, "multiple of the reference metric to perturb");
  flow->add_option("--dt", fa.opt.dt, "time step");
  flow->add_option("--steps", fa.opt.max_steps, "maximum number of steps");
  flow->add_option("--tol", fa.opt.tol, "convergence tolerance");
  flow->add_option("--mode", fa.mode, "exact or float");
  flow->add_option("--trajectory", fa.trajectory, "write the trajectory as JSON lines");
  flow->add_option("--record-every", fa.opt.record_every, "trajectory sampling interval in steps");
  flow->add_flag("!--shift-lambda", fa.keep_lambda, "allow the perturbation to change the torus pairing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*models) return cmd_models(cfg, dump);
    if (*verify) return cmd_verify(cfg, skip_duality);
    if (*dia) return cmd_diamond(cfg, kind, expect, reps);
    if (*cls) return cmd_class(cfg, form_path, class_kind, bf);
    if (*flow) return cmd_flow(cfg, fa);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::parse:
      case ErrorCode::unknown_model:
      case ErrorCode::bidegree_mismatch:
      case ErrorCode::degenerate_parameter:
      case ErrorCode::invalid_argument:
      case ErrorCode::mismatched_n: return 2;
      default: return 1;
    }
  }
  return 2;
}
