#include "report.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "toric/errors.hpp"

namespace toric::report {

json rat(const Rat& r) { return to_string(r); }

json rats(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat(x));
  return a;
}

json integer(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return to_string(x);
}

json ints(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer(x));
  return a;
}

json cone(const Cone& c) {
  json a = json::array();
  for (int r : c) a.push_back(r);
  return a;
}

json ext(const ExtRat& x) { return x.infinite ? json("inf") : rat(x.value); }

json fan_json(const Fan& fan) {
  json rays = json::array(), cones = json::array();
  for (const auto& r : fan.rays()) rays.push_back(ints(r));
  for (const auto& c : fan.max_cones()) cones.push_back(cone(c));
  return {{"rank", fan.rank()}, {"rays", rays}, {"max_cones", cones}};
}

json certificate_json(const CurveCertificate& c) {
  return {{"curve", {{"tau", cone(c.curve.tau)}, {"w", ints(c.curve.w)}}},
          {"intersections", rats(c.intersections)},
          {"anti_canonical_degree", rat(c.anti_canonical)},
          {"multiplicity", integer(c.multiplicity)},
          {"limit_point", c.limit_point},
          {"trace", c.trace},
          {"assumptions", c.assumptions}};
}

json chain_json(const MmpChain& chain) {
  json steps = json::array();
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const MmpStep& s = chain.steps[i];
    json j = {{"index", i},
              {"kind", to_string(s.kind)},
              {"a", rat(s.a)},
              {"divisor", rats(s.divisor)},
              {"adjusted", rats(s.adjusted)},
              {"ray_class", rats(s.ray.class_vector)},
              {"k_degree", rat(s.ray.k_degree)},
              {"exceptional_cone", cone(s.exc)},
              {"orbit", cone(s.orbit)},
              {"p_in_exceptional_locus", s.p_in_exc},
              {"picard_source", s.picard_source},
              {"picard_target", s.picard_target},
              {"source", fan_json(s.source)}};
    if (s.kind != StepKind::MoriFiber) j["target"] = fan_json(s.target);
    if (s.pushed) j["pushed"] = rats(*s.pushed);
    if (s.kind == StepKind::Divisorial) {
      j["exceptional_ray"] = s.exceptional_ray;
      j["discrepancy"] = rat(s.discrepancy);
    }
    if (s.flip_data) {
      j["flip"] = {{"new_ray", ints(s.flip_data->new_ray)},
                   {"generator", rats(s.flip_data->generator)},
                   {"wall_factor", rat(s.flip_data->wall_factor)}};
    }
    steps.push_back(std::move(j));
  }
  return {{"steps", steps}, {"terminal_step", chain.terminal}};
}

json approx_json(const ApproxResult& r) {
  json ledger = json::array();
  for (const auto& l : r.ledger)
    ledger.push_back({{"step", l.step},
                      {"a", rat(l.a)},
                      {"alpha", rat(l.alpha)},
                      {"alpha_adjusted", rat(l.alpha_adjusted)},
                      {"anti_canonical_degree", rat(l.anti_canonical)},
                      {"multiplicity", integer(l.multiplicity)},
                      {"dim", l.dim},
                      {"bound_holds", l.bound_holds}});
  json branches = json::array();
  for (const auto& b : r.branches) branches.push_back({{"m", integer(b.m)}, {"r", b.r}});
  json j = {{"certificate", certificate_json(r.certificate)},
            {"degree", rat(r.degree)},
            {"alpha", ext(r.alpha)},
            {"branches", branches},
            {"ledger", ledger},
            {"assumptions", r.assumptions},
            {"provenance", r.provenance},
            {"projective_space", r.projective_space}};
  if (r.chain) j["chain"] = chain_json(*r.chain);
  return j;
}

json form_json(const WeightedForm& f) {
  json terms = json::array();
  for (const auto& e : monomial_basis(f.weights, f.degree)) {
    auto it = f.terms.find(e);
    if (it == f.terms.end()) continue;
    terms.push_back({{"exponent", e}, {"coefficient", rat(it->second)}});
  }
  json w = json::array();
  for (const auto& q : f.weights) w.push_back(integer(q));
  return {{"weights", w}, {"degree", integer(f.degree)}, {"text", f.to_string()}, {"terms", terms}};
}

json tangent_json(const TangentReport& t) {
  json j = {{"multiplicity", t.multiplicity},
            {"tangent_form", rats(t.tangent)},
            {"rational_directions", t.rational_directions},
            {"conjugate_pair", t.has_quadratic_pair},
            {"splitting_field", t.has_quadratic_pair ? "Q(sqrt(" + to_string(t.field_d) + "))" : "rational tangents"}};
  if (t.discriminant) j["discriminant"] = integer(*t.discriminant);
  return j;
}

json p4713_json(const P4713Report& r) {
  return {
      {"driver", {{"degree", rat(r.driver_degree)}, {"alpha", ext(r.driver_alpha)}, {"trace", r.driver_trace}}},
      {"x5_yz", {{"form", form_json(r.x5_yz)}, {"degree", rat(r.x5_yz_degree)}, {"alpha", ext(r.x5_yz_alpha)}}},
      {"nodal_curve",
       {{"form", form_json(r.c1)},
        {"degree", rat(r.c1_degree)},
        {"tangent", tangent_json(r.c1_tangent)},
        {"alpha", ext(r.c1_alpha)},
        {"case", r.c1_case}}},
      {"order_three_section",
       {{"h0_dimension", r.h0_dim},
        {"kernel_dimension", r.order3_dim},
        {"form", form_json(r.c2)},
        {"degree", rat(r.c2_degree)},
        {"tangent", tangent_json(r.c2_tangent)},
        {"alpha_lower_bound", rat(r.c2_alpha_lower)},
        {"alpha", r.c2_alpha ? ext(*r.c2_alpha) : json(nullptr)},
        {"irreducibility_over_q", to_string(r.c2_irreducibility)}}},
      {"base_locus",
       {{"power", integer(r.power)},
        {"multiple_of_d", integer(r.multiple)},
        {"vanishing_order", integer(r.order)},
        {"self_intersection", rat(r.selfintersection)},
        {"lower_bound", rat(r.lower_bound)}}},
      {"best_approximation", r.best_approximation},
      {"verdict", r.verdict}};
}

json candidates_json(const std::vector<Candidate>& cs) {
  json a = json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Candidate& c = cs[i];
    json j = {{"rank", i + 1},
              {"form", form_json(c.form)},
              {"degree", rat(c.degree)},
              {"status", to_string(c.status)},
              {"alpha", ext(c.alpha)}};
    if (c.multiplicity > 0) {
      j["multiplicity"] = c.multiplicity;
      j["field_d"] = integer(c.field_d);
    }
    a.push_back(std::move(j));
  }
  return a;
}

// --- inputs -------------------------------------------------------------------------

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

Int parse_integer(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    Rat r = parse_rat(j.get<std::string>());
    if (den(r) != 1) throw ParseError(what + ": expected an integer");
    return num(r);
  }
  throw ParseError(what + ": expected an exact integer");
}

}  // namespace

Rat parse_rat_value(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw ParseError("expected an exact rational written as \"p/q\"");
}

Fan parse_fan(const json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("rays") || !j.contains("max_cones"))
    throw ParseError("a fan needs rank, rays and max_cones");
  Int rank = parse_integer(j["rank"], "rank");
  if (rank < 1 || rank > 64) throw ParseError("rank out of range");
  std::vector<IntVec> rays;
  if (!j["rays"].is_array()) throw ParseError("rays must be an array");
  for (const auto& r : j["rays"]) {
    if (!r.is_array()) throw ParseError("each ray must be an array of integers");
    IntVec v;
    for (const auto& x : r) v.push_back(parse_integer(x, "ray coordinate"));
    if (v.size() != static_cast<std::size_t>(rank)) throw ParseError("ray length differs from rank");
    rays.push_back(std::move(v));
  }
  std::vector<Cone> cones;
  if (!j["max_cones"].is_array()) throw ParseError("max_cones must be an array");
  for (const auto& c : j["max_cones"]) {
    if (!c.is_array()) throw ParseError("each cone must be an array of ray indices");
    Cone cc;
    for (const auto& x : c) {
      Int i = parse_integer(x, "ray index");
      if (i < 0 || i >= static_cast<long>(rays.size())) throw ParseError("ray index out of range");
      cc.push_back(static_cast<int>(i));
    }
    cones.push_back(std::move(cc));
  }
  return build_fan(static_cast<std::size_t>(rank), std::move(rays), std::move(cones));
}

TorusDivisor parse_divisor(const json& j, std::size_t num_rays) {
  const json& a = j.is_object() && j.contains("coefficients") ? j["coefficients"] : j;
  if (!a.is_array()) throw ParseError("a divisor is an array of rationals");
  TorusDivisor d;
  for (const auto& x : a) d.push_back(parse_rat_value(x));
  if (d.size() != num_rays) throw DivisorMismatch("divisor has " + std::to_string(d.size()) + " coefficients for " +
                                                  std::to_string(num_rays) + " rays");
  return d;
}

IntVec parse_int_vector(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    // Also accept a bare comma-separated list.
    j = json::parse("[" + text + "]", nullptr, false);
    if (j.is_discarded()) throw ParseError("cannot read integer list: " + text);
  }
  if (j.is_number_integer()) j = json::array({j});
  if (!j.is_array()) throw ParseError("expected an integer list: " + text);
  IntVec out;
  for (const auto& x : j) out.push_back(parse_integer(x, "list entry"));
  return out;
}

Cone parse_orbit(const std::string& text) {
  Cone c;
  for (const auto& x : parse_int_vector(text)) {
    if (x < 0) throw ParseError("negative ray index in orbit");
    c.push_back(static_cast<int>(x));
  }
  return make_cone(c);
}

ArithmeticContext parse_context(const json& j) {
  if (!j.is_object()) throw ParseError("a context is an object");
  ArithmeticContext ctx;
  if (j.contains("k_is_Q")) {
    if (!j["k_is_Q"].is_boolean()) throw ParseError("k_is_Q must be a boolean");
    ctx.k_is_q = j["k_is_Q"].get<bool>();
  }
  if (j.contains("quadratics")) {
    if (!j["quadratics"].is_array()) throw ParseError("quadratics must be an array");
    for (const auto& q : j["quadratics"]) {
      if (!q.is_object() || !q.contains("d")) throw ParseError("each quadratic field needs d");
      QuadraticField f;
      f.d = parse_integer(q["d"], "d");
      if (f.d == 0 || f.d == 1 || squarefree_part(f.d) != f.d) throw ParseError("d must be squarefree and not 0 or 1");
      auto flag = [&](const char* key) {
        if (!q.contains(key)) return false;
        if (!q[key].is_boolean()) throw ParseError(std::string(key) + " must be a boolean");
        return q[key].get<bool>();
      };
      f.in_k = flag("in_k");
      f.in_kv = flag("in_kv");
      ctx.quadratics.push_back(f);
    }
  }
  ctx.validate();
  return ctx;
}

// --- text rendering -----------------------------------------------------------------

namespace {

void render(const json& j, const std::string& indent, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      bool leaf = !v.is_structured() || (v.is_array() && std::none_of(v.begin(), v.end(), [](const json& x) {
                                           return x.is_structured();
                                         }));
      if (leaf) {
        os << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        os << indent << it.key() << ":\n";
        render(v, indent + "  ", os);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_structured()) {
        os << indent << "- [" << i << "]\n";
        render(j[i], indent + "  ", os);
      } else {
        os << indent << "- " << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump()) << "\n";
      }
    }
  } else {
    os << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string to_text(const json& j) {
  std::ostringstream os;
  render(j, "", os);
  return os.str();
}

}  // namespace toric::report
