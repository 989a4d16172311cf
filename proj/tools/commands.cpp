#include "commands.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "report.hpp"
#include "toric/errors.hpp"

namespace toric::cli {

using report::json;

namespace {

struct Options {
  std::string format = "json";
  std::string out;
  std::string fan, divisor, context;
  std::string orbit = "[]";
  std::string tau = "[]", w;
  std::string degree, branches;
  std::string weights = "4,7,13";
  std::string which;
  long cap = 39;
  bool assume_cb = false;
};

// "fan check" and friends become the hyphenated verb.
std::vector<std::string> join_aliases(std::vector<std::string> args) {
  static const std::map<std::string, std::vector<std::string>> pairs = {
      {"fan", {"check", "terminal"}}, {"divisor", {"nef"}}, {"mmp", {"run"}},
      {"curve", {"find"}},            {"theorem", {"run"}}};
  if (args.size() >= 2) {
    auto it = pairs.find(args[0]);
    if (it != pairs.end() && std::find(it->second.begin(), it->second.end(), args[1]) != it->second.end()) {
      args[0] += "-" + args[1];
      args.erase(args.begin() + 1);
    } else if (args[0] == "alpha" && args[1] == "curve") {
      args.erase(args.begin() + 1);
    }
  }
  if (!args.empty() && args[0] == "alpha-curve") args[0] = "alpha";
  return args;
}

Fan load_fan(const Options& o) { return report::parse_fan(report::read_json_file(o.fan)); }

TorusDivisor load_divisor(const Options& o, const Fan& fan) {
  return report::parse_divisor(report::read_json_file(o.divisor), fan.num_rays());
}

ArithmeticContext load_context(const Options& o) {
  if (o.context.empty()) return {};
  return report::parse_context(report::read_json_file(o.context));
}

std::vector<Int> parse_weights(const std::string& text) {
  std::vector<Int> q;
  for (const auto& x : report::parse_int_vector(text)) q.push_back(x);
  return q;
}

json fan_check(const Options& o) {
  Fan fan = load_fan(o);
  json r = {{"valid", true},
            {"rank", fan.rank()},
            {"num_rays", fan.num_rays()},
            {"num_max_cones", fan.max_cones().size()},
            {"picard_rank", picard_rank(fan)},
            {"projective_space", is_projective_space(fan)},
            {"terminal", is_terminal(fan).terminal},
            {"fake_weighted_projective_space", nullptr}};
  if (fan.num_rays() == fan.rank() + 1) {
    try {
      FwpsData f = recognize_fwps(fan);
      r["fake_weighted_projective_space"] = {{"weights", report::ints(f.weights)},
                                             {"cover_index", report::integer(f.cover_index)},
                                             {"group_invariants", report::ints(f.group_invariants)}};
    } catch (const NotFwps&) {
    }
  }
  return r;
}

json fan_terminal(const Options& o) {
  Fan fan = load_fan(o);
  TerminalReport t = is_terminal(fan);
  json bad = json::array();
  for (auto c : t.offending)
    bad.push_back({{"cone", report::cone(fan.max_cones()[c])}, {"multiplicity", report::integer(cone_multiplicity(fan, fan.max_cones()[c]))}});
  return {{"terminal", t.terminal}, {"offending_cones", bad}};
}

json divisor_nef(const Options& o) {
  Fan fan = load_fan(o);
  TorusDivisor d = load_divisor(o, fan);
  json walls = json::array();
  for (const auto& c : wall_curves(fan))
    walls.push_back({{"wall", c.wall}, {"face", report::cone(c.face)}, {"degree", report::rat(intersect(fan, d, c))}});
  return {{"nef", is_nef(fan, d)},
          {"cartier_index", report::integer(support_function(fan, d).cartier_index)},
          {"wall_degrees", walls}};
}

json mmp_run(const Options& o) {
  Fan fan = load_fan(o);
  TorusDivisor d = load_divisor(o, fan);
  Cone orbit = report::parse_orbit(o.orbit);
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not a cone of the fan");
  return report::chain_json(run_mmp_chain(fan, d, orbit, o.assume_cb));
}

json curve_find(const Options& o) {
  Fan fan = load_fan(o);
  Cone orbit = report::parse_orbit(o.orbit);
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not a cone of the fan");
  CurveCertificate c = fwps_curve(fan, orbit);
  json r = report::certificate_json(c);
  r["dim"] = fan.rank();
  r["within_dim_plus_one"] = c.anti_canonical <= static_cast<long>(fan.rank() + 1);
  r["within_dim"] = c.anti_canonical <= static_cast<long>(fan.rank());
  return r;
}

json alpha(const Options& o) {
  ArithmeticContext ctx = load_context(o);
  if (!o.degree.empty()) {
    Rat d = parse_rat(o.degree);
    json b = json::parse(o.branches.empty() ? "[[1,1]]" : o.branches, nullptr, false);
    if (b.is_discarded() || !b.is_array()) throw ParseError("branches: expected [[m, r], ...]");
    BranchData data;
    for (const auto& x : b) {
      if (!x.is_array() || x.size() != 2 || !x[0].is_number_integer() || !x[1].is_number_integer())
        throw ParseError("branches: expected [[m, r], ...]");
      data.push_back({Int(x[0].get<std::int64_t>()), x[1].get<int>()});
    }
    return {{"degree", report::rat(d)}, {"alpha", report::ext(alpha_rational_curve(d, data))}};
  }
  Fan fan = load_fan(o);
  TorusDivisor d = load_divisor(o, fan);
  Cone orbit = report::parse_orbit(o.orbit);
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not a cone of the fan");
  if (o.w.empty()) throw ParseError("--w is required with --fan");
  OnePsCurve curve{report::parse_orbit(o.tau), report::parse_int_vector(o.w)};
  if (!fan.has_cone(curve.tau)) throw ConeNotInFan("curve orbit is not a cone of the fan");
  CurveCertificate c = certify(fan, curve, {"one-parameter-subgroup"});
  if (!curve_meets_orbit(fan, c.curve, orbit, &c.limit_point)) throw CurveMissesPoint("the curve does not meet the orbit of P");
  c.multiplicity = curve_multiplicity(fan, c.curve, orbit);
  Rat deg = dot(d, c.intersections);
  BranchData br{{c.multiplicity, ctx.branch_r(1)}};
  return {{"certificate", report::certificate_json(c)}, {"degree", report::rat(deg)}, {"alpha", report::ext(alpha_rational_curve(deg, br))}};
}

json theorem_run(const Options& o) {
  Fan fan = load_fan(o);
  TorusDivisor d = load_divisor(o, fan);
  Cone orbit = report::parse_orbit(o.orbit);
  return report::approx_json(approximation_driver(fan, d, orbit, load_context(o), o.assume_cb));
}

json casestudy(const Options& o) {
  ArithmeticContext ctx = load_context(o);
  if (o.which == "p4713") return report::p4713_json(casestudy_p4713(ctx));
  if (o.which == "search") {
    if (o.cap < 1 || o.cap > 400) throw ParseError("cap out of range");
    return {{"candidates", report::candidates_json(curve_alpha_search(parse_weights(o.weights), o.cap, ctx))}};
  }
  throw ParseError("casestudy expects p4713 or search");
}

int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::Internal: return 1;
    case ErrorClass::Assumption: return 2;
    case ErrorClass::Input:
    case ErrorClass::Domain: return 3;
  }
  return 1;
}

const char* class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::Internal: return "internal";
    case ErrorClass::Assumption: return "assumption";
    case ErrorClass::Input: return "input";
    case ErrorClass::Domain: return "domain";
  }
  return "?";
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  args = join_aliases(std::move(args));
  Options o;
  CLI::App app{"Exact toric MMP and approximation-constant toolkit", "toric"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out, "write the report to a file");

  std::map<std::string, std::function<json(const Options&)>> handlers;
  auto verb = [&](const std::string& name, const std::string& help, auto fn) {
    handlers[name] = fn;
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--out", o.out, "write the report to a file");
    return s;
  };
  auto* fc = verb("fan-check", "validate a fan file", fan_check);
  fc->add_option("--fan", o.fan)->required()->check(CLI::ExistingFile);
  auto* ft = verb("fan-terminal", "terminality with offending cones", fan_terminal);
  ft->add_option("--fan", o.fan)->required()->check(CLI::ExistingFile);
  auto* dn = verb("divisor-nef", "nefness and wall degrees of a divisor", divisor_nef);
  dn->add_option("--fan", o.fan)->required()->check(CLI::ExistingFile);
  dn->add_option("--divisor", o.divisor)->required()->check(CLI::ExistingFile);
  auto* mr = verb("mmp-run", "run the MMP chain for D", mmp_run);
  mr->add_option("--fan", o.fan)->required()->check(CLI::ExistingFile);
  mr->add_option("--divisor", o.divisor)->required()->check(CLI::ExistingFile);
  mr->add_option("--orbit", o.orbit, "ray indices of the orbit cone of P");
  mr->add_flag("--assume-cb", o.assume_cb, "P is canonically bounded");
  auto* cf = verb("curve-find", "curve through P on a fake weighted projective space", curve_find);
  cf->add_option("--fan", o.fan)->required()->check(CLI::ExistingFile);
  cf->add_option("--orbit", o.orbit);
  auto* al = verb("alpha", "approximation constant of a rational curve", alpha);
  al->add_option("--degree", o.degree, "C.D, with --branches");
  al->add_option("--branches", o.branches, "[[m, r], ...]");
  al->add_option("--fan", o.fan)->check(CLI::ExistingFile);
  al->add_option("--divisor", o.divisor)->check(CLI::ExistingFile);
  al->add_option("--orbit", o.orbit);
  al->add_option("--tau", o.tau, "orbit cone of the curve");
  al->add_option("--w", o.w, "cocharacter in the quotient by tau");
  al->add_option("--context", o.context)->check(CLI::ExistingFile);
  auto* tr = verb("theorem-run", "approximating curve through P with its ledger", theorem_run);
  tr->add_option("--fan", o.fan)->required()->check(CLI::ExistingFile);
  tr->add_option("--divisor", o.divisor)->required()->check(CLI::ExistingFile);
  tr->add_option("--orbit", o.orbit);
  tr->add_option("--context", o.context)->check(CLI::ExistingFile);
  tr->add_flag("--assume-cb", o.assume_cb, "P is canonically bounded");
  auto* cs = verb("casestudy", "the weighted plane P(4,7,13)", casestudy);
  cs->add_option("which", o.which, "p4713 or search")->required()->check(CLI::IsMember({"p4713", "search"}));
  cs->add_option("--context", o.context)->check(CLI::ExistingFile);
  cs->add_option("--weights", o.weights);
  cs->add_option("--cap", o.cap);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  std::string name;
  for (auto* s : app.get_subcommands()) name = s->get_name();
  json doc = {{"schema_version", report::kSchemaVersion}, {"command", name}};
  int code = 0;
  try {
    doc["result"] = handlers.at(name)(o);
  } catch (const Error& e) {
    code = exit_code(e.error_class());
    doc["error"] = {{"type", e.code()}, {"class", class_name(e.error_class())}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = 1;
    doc["error"] = {{"type", "unexpected"}, {"class", "internal"}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
  }
  std::string text = o.format == "json" ? doc.dump(2) + "\n" : report::to_text(doc);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write " << o.out << "\n";
      return 3;
    }
    f << text;
  }
  return code;
}

}  // namespace toric::cli
