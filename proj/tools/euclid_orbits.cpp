// Command-line front end: classify, normal-form, pair, check, spectrum, kks, line.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eorb/checks.hpp"
#include "eorb/eorb.hpp"
#include "eorb/json_io.hpp"

namespace {

using eorb::io::json;

enum class Status { Ok, InvariantViolation, InputError };

const char * status_name(Status s)
{
  switch (s) {
  case Status::Ok: return "Ok";
  case Status::InvariantViolation: return "InvariantViolation";
  case Status::InputError: return "InputError";
  }
  return "";
}

int exit_code(Status s)
{
  switch (s) {
  case Status::Ok: return 0;
  case Status::InvariantViolation: return 1;
  case Status::InputError: return 2;
  }
  return 2;
}

struct CommandResult
{
  Status status = Status::Ok;
  json payload  = json::object();
  std::vector<std::string> diagnostics;
};

struct Options
{
  std::string group = "E";
  std::string group_file;
  int n = 0;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string output = "json";
  std::string kind   = "adjoint";
  std::string input;
  std::string suite = "all";
  int trials        = 100;
};

json read_input(const std::string & path)
{
  if (path.empty()) throw eorb::InputError("missing --input");
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw eorb::InputError("cannot open input file '" + path + "'");
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::exception & e) {
    throw eorb::InputError(std::string("input is not valid JSON: ") + e.what());
  }
}

/// Ambient dimension of a point document: --n when given, else the size of its matrix.
int infer_n(const Options & o, const json & point)
{
  if (o.n > 0) return o.n;
  for (const char * key : {"omega", "L"}) {
    if (point.is_object() && point.contains(key) && point.at(key).is_array()) return static_cast<int>(point.at(key).size());
  }
  if (point.is_array()) return static_cast<int>(point.size());
  throw eorb::InputError("cannot infer n; pass --n");
}

/// Splits "SE3" into ("SE", 3); a bare family or the "n" placeholder spelling yields 0.
std::pair<std::string, int> split_group_name(const std::string & name)
{
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  if (cut == name.size() || cut == 0) return {name, 0};
  return {name.substr(0, cut), std::stoi(name.substr(cut))};
}

eorb::GroupSpec make_group(const Options & o, int n)
{
  if (!o.group_file.empty()) {
    auto g = eorb::io::group_from_json(read_input(o.group_file));
    if (o.n > 0 && g.n() != o.n) throw eorb::InputError("--n disagrees with the group file");
    return g;
  }
  eorb::ToleranceConfig tol;
  if (o.tol) tol.abs = *o.tol;
  tol.validate();
  const auto [family_name, group_n] = split_group_name(o.group);
  if (group_n > 0) {
    if (o.n > 0 && o.n != group_n) throw eorb::InputError("--group dimension disagrees with --n");
    n = group_n;
  }
  const auto fam = eorb::io::family_from_string(family_name);
  if (fam == eorb::Family::Custom) throw eorb::InputError("custom groups need --group-file");
  if (n < 1) throw eorb::InputError("n must be positive");
  return eorb::GroupSpec(n, fam, tol);
}

eorb::OrbitKind parse_kind(const std::string & k)
{
  if (k == "adjoint") return eorb::OrbitKind::Adjoint;
  if (k == "coadjoint") return eorb::OrbitKind::Coadjoint;
  throw eorb::InputError("--kind must be adjoint or coadjoint");
}

CommandResult cmd_classify(const Options & o)
{
  const json in = read_input(o.input);
  const auto g  = make_group(o, infer_n(o, in));
  eorb::OrbitClass c;
  if (parse_kind(o.kind) == eorb::OrbitKind::Adjoint) {
    const auto x = eorb::io::algebra_from_json(in, g.n());
    eorb::validate(g, x);
    c = eorb::classify(g, x);
  } else {
    const auto m = eorb::io::dual_from_json(in, g.n());
    eorb::validate(g, m);
    c = eorb::classify(g, m);
  }
  CommandResult r;
  r.payload = eorb::io::to_json(c);
  if (!c.dims_consistent()) {
    r.status = Status::InvariantViolation;
    r.diagnostics.push_back("flag dimension " + std::to_string(c.flag_dim) + " disagrees with rank oracle " + std::to_string(c.orbit_dim));
  }
  if (c.components_rule_derived) r.diagnostics.push_back("component count uses the extrapolated rule (n > 3)");
  return r;
}

CommandResult cmd_normal_form(const Options & o)
{
  const json in = read_input(o.input);
  const auto g  = make_group(o, infer_n(o, in));
  CommandResult r;
  double residual = 0;
  double scale    = 1;
  if (parse_kind(o.kind) == eorb::OrbitKind::Adjoint) {
    const auto x = eorb::io::algebra_from_json(in, g.n());
    eorb::validate(g, x);
    const auto nf = eorb::normal_form_adjoint(g, x);
    r.payload     = eorb::io::to_json(nf);
    residual      = nf.residual;
    scale         = eorb::scale_of(x);
  } else {
    const auto m = eorb::io::dual_from_json(in, g.n());
    eorb::validate(g, m);
    const auto nf = eorb::normal_form_coadjoint(g, m);
    r.payload     = eorb::io::to_json(nf);
    residual      = nf.residual;
    scale         = eorb::scale_of(m);
  }
  r.payload["kind"] = o.kind;
  if (residual > 1e-9 * scale) {
    r.status = Status::InvariantViolation;
    r.diagnostics.push_back("normal-form residual exceeds 1e-9 relative");
  }
  return r;
}

CommandResult cmd_pair(const Options & o)
{
  const json in = read_input(o.input);
  const auto g  = make_group(o, infer_n(o, in));
  const auto x  = eorb::io::algebra_from_json(in, g.n());
  const auto rep = eorb::bijection_pair(g, x);
  CommandResult r;
  r.payload = eorb::io::to_json(rep);
  if (!rep.base_agrees()) {
    r.status = Status::InvariantViolation;
    r.diagnostics.push_back("base signatures disagree");
  }
  if (!rep.fibre_consistent()) {
    r.status = Status::InvariantViolation;
    r.diagnostics.push_back("fibre dimension disagrees with the orbit dimensions");
  }
  return r;
}

CommandResult cmd_check(const Options & o)
{
  eorb::checks::CheckOptions co;
  co.n      = o.n > 0 ? o.n : 3;
  co.trials = o.trials;
  co.seed   = o.seed;
  if (o.tol) co.tol.abs = *o.tol;
  co.tol.validate();
  const auto results = eorb::checks::run_suite(o.suite, co);
  CommandResult r;
  json rows   = json::array();
  bool all_ok = true;
  for (const auto & p : results) {
    all_ok = all_ok && p.passed;
    rows.push_back({{"suite", p.suite},
                    {"name", p.name},
                    {"passed", p.passed},
                    {"max_residual", p.max_residual},
                    {"threshold", p.threshold},
                    {"trials", p.trials},
                    {"detail", p.detail}});
    if (!p.passed) r.diagnostics.push_back("FAILED " + p.suite + ": " + p.name + (p.detail.empty() ? "" : " (" + p.detail + ")"));
  }
  r.payload = {{"suite", o.suite}, {"n", co.n}, {"trials", co.trials}, {"seed", co.seed}, {"all_passed", all_ok}, {"results", rows}};
  if (!all_ok) r.status = Status::InvariantViolation;
  return r;
}

CommandResult cmd_spectrum(const Options & o)
{
  const json in = read_input(o.input);
  const json & mj = in.is_object() ? eorb::io::field(in, "omega", "spectrum input") : in;
  const eorb::Mat w = eorb::io::mat_from_json(mj, "omega");
  if (w.rows() != w.cols()) throw eorb::InputError("omega must be square");
  if (o.n > 0 && w.rows() != o.n) throw eorb::InputError("omega size disagrees with --n");
  eorb::ToleranceConfig tol;
  if (o.tol) tol.abs = *o.tol;
  tol.validate();
  const auto s = eorb::youla_decompose(w, tol);
  CommandResult r;
  r.payload                          = eorb::io::to_json(s);
  r.payload["reconstruction_residual"] = w.size() ? (eorb::reconstruct(s) - w).cwiseAbs().maxCoeff() : 0.0;
  return r;
}

CommandResult cmd_kks(const Options & o)
{
  const json in  = read_input(o.input);
  const json & mj = eorb::io::field(in, "m", "kks input");
  const auto g    = make_group(o, infer_n(o, mj));
  const auto m    = eorb::io::dual_from_json(mj, g.n());
  const auto xi   = eorb::io::algebra_from_json(eorb::io::field(in, "xi", "kks input"), g.n());
  const auto eta  = eorb::io::algebra_from_json(eorb::io::field(in, "eta", "kks input"), g.n());
  CommandResult r;
  r.payload = {{"value", eorb::kks_eval(g, m, xi, eta)}};
  return r;
}

CommandResult cmd_line(const Options & o)
{
  const json in = read_input(o.input);
  const auto g  = make_group(o, infer_n(o, in));
  const auto m  = eorb::io::dual_from_json(in, g.n());
  CommandResult r;
  r.payload = eorb::io::to_json(eorb::line_from_coadjoint(g, m));
  return r;
}

void emit(const std::string & command, const CommandResult & r, const std::string & format)
{
  const json rounded = eorb::io::rounded(r.payload);
  if (format == "pretty") {
    std::cout << command << ": " << status_name(r.status) << "\n" << rounded.dump(2) << "\n";
    for (const auto & d : r.diagnostics) std::cout << "note: " << d << "\n";
    return;
  }
  json out = {{"command", command}, {"status", status_name(r.status)}, {"payload", r.payload}, {"rounded", rounded}, {"diagnostics", r.diagnostics}};
  std::cout << out.dump() << "\n";
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Adjoint and coadjoint orbits of Euclidean-type groups"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--group", o.group, "group family: On, SOn, En, SEn (or O, SO, E, SE)");
  app.add_option("--group-file", o.group_file, "GroupSpec JSON, required for custom subgroups");
  app.add_option("--n", o.n, "ambient dimension (inferred from the input when omitted)");
  app.add_option("--tol", o.tol, "absolute tolerance");
  app.add_option("--seed", o.seed, "random seed; EUCLID_ORBITS_SEED overrides it");
  app.add_option("--output", o.output, "output format")->check(CLI::IsMember({"json", "pretty"}));

  auto add_point_command = [&](const char * name, const char * help, bool with_kind) {
    auto * sub = app.add_subcommand(name, help);
    sub->add_option("--input", o.input, "point JSON file, - for stdin")->required();
    if (with_kind) sub->add_option("--kind", o.kind, "adjoint or coadjoint")->check(CLI::IsMember({"adjoint", "coadjoint"}));
    return sub;
  };
  auto * classify    = add_point_command("classify", "classify the orbit through a point", true);
  auto * normal_form = add_point_command("normal-form", "move a point into the Cartan subset", true);
  auto * pair        = add_point_command("pair", "pair an adjoint orbit with its coadjoint partner", false);
  auto * spectrum    = add_point_command("spectrum", "canonical decomposition of a skew matrix", false);
  auto * kks         = add_point_command("kks", "evaluate the KKS form", false);
  auto * line        = add_point_command("line", "oriented line of a point on a sphere-tangent-bundle orbit", false);
  auto * check       = app.add_subcommand("check", "run the seeded property suites");
  check->add_option("--suite", o.suite, "all, core, spectral, orbits, flags or symplectic");
  check->add_option("--trials", o.trials, "trials per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return 2;
  }
  if (const char * env = std::getenv("EUCLID_ORBITS_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception &) {
      std::cerr << "EUCLID_ORBITS_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CommandResult r;
  try {
    if (classify->parsed()) r = cmd_classify(o);
    else if (normal_form->parsed()) r = cmd_normal_form(o);
    else if (pair->parsed()) r = cmd_pair(o);
    else if (spectrum->parsed()) r = cmd_spectrum(o);
    else if (kks->parsed()) r = cmd_kks(o);
    else if (line->parsed()) r = cmd_line(o);
    else if (check->parsed()) r = cmd_check(o);
  } catch (const eorb::InvariantViolation & e) {
    r = {Status::InvariantViolation, json::object(), {e.what()}};
  } catch (const eorb::DecompositionError & e) {
    r = {Status::InvariantViolation, json::object(), {e.what()}};
  } catch (const eorb::Error & e) {
    r = {Status::InputError, json::object(), {e.what()}};
  } catch (const json::exception & e) {
    r = {Status::InputError, json::object(), {e.what()}};
  }
  emit(command, r, o.output);
  return exit_code(r.status);
}
