// Copyright 2026 The dioph Authors
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

// Certificate and config trees. Exact integers are decimal strings, reals are
// {"decimal", "radius"} pairs; member order is fixed so output is
// byte-for-byte reproducible.

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dioph/pipeline.hpp"
#include "json.hpp"

namespace dioph::pipe {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSignificantDigits = 10;

Json real_json(const CReal& x) {
  Json j;
  j["decimal"] = x.center_decimal(kSignificantDigits);
  j["radius"] = x.radius_decimal();
  return j;
}

Json real_json(const Expr& e, int digits) { return real_json(e.eval(digits)); }

Json spec_json(const seq::RecurrenceSpec& s) {
  Json j;
  j["name"] = s.name;
  j["a"] = s.a;
  j["b"] = s.b;
  j["u0"] = s.u0.get_str();
  j["u1"] = s.u1.get_str();
  return j;
}

Json config_json(const PipelineConfig& c) {
  Json j;
  j["equation"] = c.equation;
  j["u"] = spec_json(c.u);
  j["v"] = spec_json(c.v);
  j["first_form_number"] = c.first_form_number;
  j["search"] = {{"k_max", c.k_max}, {"n_max", c.n_max}};
  j["precision"] = {{"initial_digits", c.precision.initial_digits}, {"cap_digits", c.precision.cap_digits}};
  Json r;
  r["lemma_m"] = c.lemma_m.get_str();
  r["convergent_index"] = c.convergent_index ? Json(*c.convergent_index) : Json(nullptr);
  r["m_guard"] = c.m_guard;
  r["n_guard"] = c.n_guard;
  j["reduction"] = r;
  j["expect_k"] = c.expect_k ? Json(*c.expect_k) : Json(nullptr);
  return j;
}

// --- parsing -----------------------------------------------------------------

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

mpz_class get_mpz(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ConfigError(where + ": not an integer");
    return z;
  }
  throw ConfigError(where + ": expected an integer or a decimal string");
}

long get_long(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<long>();
}

seq::RecurrenceSpec parse_spec(const Json& j, const std::string& where) {
  check_keys(j, where, {"name", "a", "b", "u0", "u1"});
  seq::RecurrenceSpec s;
  s.name = j.contains("name") ? j.at("name").get<std::string>() : where;
  if (!j.contains("a") || !j.contains("b")) throw ConfigError(where + ": a and b are required");
  s.a = get_long(j.at("a"), where + ".a");
  s.b = get_long(j.at("b"), where + ".b");
  if (j.contains("u0")) s.u0 = get_mpz(j.at("u0"), where + ".u0");
  if (j.contains("u1")) s.u1 = get_mpz(j.at("u1"), where + ".u1");
  return s;
}

PipelineConfig config_from_json(const Json& root) {
  const Json& j = root.contains("config") ? root.at("config") : root;
  check_keys(j, "config",
             {"equation", "u", "v", "first_form_number", "search", "precision", "reduction", "expect_k"});
  const std::string equation = j.contains("equation") ? j.at("equation").get<std::string>() : "fpp";
  PipelineConfig c;
  const bool custom_pair = j.contains("u") || j.contains("v");
  if (!custom_pair) {
    c = builtin_config(equation);
  } else {
    if (!j.contains("u") || !j.contains("v")) throw ConfigError("config: give both u and v");
    c.equation = equation;
    c.u = parse_spec(j.at("u"), "u");
    c.v = parse_spec(j.at("v"), "v");
  }
  if (j.contains("first_form_number")) c.first_form_number = static_cast<int>(get_long(j.at("first_form_number"), "first_form_number"));
  if (j.contains("search")) {
    const Json& s = j.at("search");
    check_keys(s, "search", {"k_max", "n_max"});
    if (s.contains("k_max")) c.k_max = get_long(s.at("k_max"), "search.k_max");
    if (s.contains("n_max")) c.n_max = get_long(s.at("n_max"), "search.n_max");
  }
  if (j.contains("precision")) {
    const Json& p = j.at("precision");
    check_keys(p, "precision", {"initial_digits", "cap_digits"});
    if (p.contains("initial_digits")) c.precision.initial_digits = static_cast<int>(get_long(p.at("initial_digits"), "precision.initial_digits"));
    if (p.contains("cap_digits")) c.precision.cap_digits = static_cast<int>(get_long(p.at("cap_digits"), "precision.cap_digits"));
  }
  if (j.contains("reduction")) {
    const Json& r = j.at("reduction");
    check_keys(r, "reduction", {"lemma_m", "convergent_index", "m_guard", "n_guard"});
    if (r.contains("lemma_m")) c.lemma_m = get_mpz(r.at("lemma_m"), "reduction.lemma_m");
    if (r.contains("convergent_index")) {
      const Json& ci = r.at("convergent_index");
      if (ci.is_null()) {
        c.convergent_index.reset();
      } else {
        const long idx = get_long(ci, "reduction.convergent_index");
        if (idx < 0) throw ConfigError("reduction.convergent_index must be >= 0");
        c.convergent_index = static_cast<std::size_t>(idx);
      }
    }
    if (r.contains("m_guard")) c.m_guard = get_long(r.at("m_guard"), "reduction.m_guard");
    if (r.contains("n_guard")) c.n_guard = get_long(r.at("n_guard"), "reduction.n_guard");
  }
  if (j.contains("expect_k") && !j.at("expect_k").is_null()) {
    std::vector<long> ks;
    for (const Json& k : j.at("expect_k")) ks.push_back(get_long(k, "expect_k"));
    std::sort(ks.begin(), ks.end());
    c.expect_k = ks;
  }
  apply_precision_env(c);
  return c;
}

// --- rendering ---------------------------------------------------------------

Json param_json(const lin::AlgebraicParam& p, int digits) {
  Json j;
  j["eta"] = p.description;
  j["exponent"] = p.exponent;
  j["height_bound"] = real_json(p.height_bound, digits);
  j["abs_log"] = real_json(p.log_abs, digits);
  j["A"] = real_json(p.a_value, digits);
  j["A_log_power"] = p.log_power;
  return j;
}

Json stage_json(const lin::LinearFormStage& s, int digits) {
  Json j;
  j["name"] = s.name;
  j["kind"] = s.kind == lin::StageKind::kFirst ? "first" : "second";
  j["l"] = s.l;
  j["field_degree"] = s.field_degree;
  j["D_bound"] = std::to_string(s.d_coeff) + " n";
  j["rhs_coefficient"] = real_json(s.rhs_coeff, digits);
  j["decay_base"] = real_json(s.decay_base, digits);
  j["decay_variable"] = s.decay_var == lin::DecayVar::kM ? "m" : "n";
  j["eta1_base"] = s.eta1_base.to_string();
  Json params = Json::array();
  for (const lin::AlgebraicParam& p : s.params) params.push_back(param_json(p, digits));
  j["params"] = params;
  j["matveev_coefficient"] = real_json(lin::matveev_coefficient(s), digits);
  j["matveev_log_power"] = lin::matveev_log_power(s);
  return j;
}

Json stage_bound_json(const lin::StageBound& b, int digits) {
  Json j;
  j["inequality"] = "L x - offset < C (1 + log(s x))^p";
  j["L"] = real_json(b.linear_coeff, digits);
  j["offset"] = real_json(b.offset, digits);
  j["C"] = real_json(b.coefficient, digits);
  j["s"] = b.s;
  j["p"] = b.power;
  j["N"] = b.resulting_bound.get_str();
  j["difference_at_N_minus_1"] = real_json(b.value_below);
  j["difference_at_N"] = real_json(b.value_at);
  j["slope_at_N"] = real_json(b.slope_at);
  j["iterations"] = b.iterations;
  return j;
}

Json bounds_json(const seq::RecurrencePair& pair, const lin::AbsoluteBound& a, int digits) {
  Json j;
  j["index_ratio"] = real_json(pair.index_ratio(), digits);
  j["coarse_index_coefficient"] = a.m_bound.s;
  Json first = stage_json(a.m_bound.stage, digits);
  first["m_bound"] = {
      {"inequality", "m log rho_V < C (1 + log(s n))"},
      {"C", real_json(a.m_bound.coefficient, digits)},
      {"s", a.m_bound.s},
  };
  first["eta1_height_offset"] = real_json(a.m_bound.height_offset, digits);
  first["A1_of_second_form"] = real_json(a.m_bound.a1_coefficient, digits);
  j["first_form"] = first;
  j["second_form"] = stage_json(a.second, digits);
  j["n_bound"] = stage_bound_json(a.n_bound, digits);
  return j;
}

Json instance_json(const red::ReductionInstance& inst, int digits, bool with_mu) {
  Json j;
  j["label"] = inst.label;
  j["tau"] = real_json(inst.tau, digits);
  if (with_mu) {
    j["mu"] = real_json(inst.mu, digits);
    j["mu_expr"] = inst.mu.to_string();
  }
  j["A"] = real_json(inst.a, digits);
  j["B"] = real_json(inst.b, digits);
  j["M"] = inst.m_bound.get_str();
  return j;
}

Json outcome_json(const red::ReductionOutcome& o) {
  Json j;
  j["label"] = o.label;
  j["convergent_index"] = o.convergent_index;
  j["p"] = o.p.get_str();
  j["q"] = o.q.get_str();
  j["q_exceeds_6M"] = o.q_exceeds_6m;
  j["epsilon"] = real_json(o.epsilon);
  j["log_bound"] = real_json(o.raw_bound);
  j["bound"] = o.exponent_bound.get_str();
  Json skipped = Json::array();
  for (std::size_t i : o.skipped) skipped.push_back(i);
  j["skipped_indices"] = skipped;
  return j;
}

Json family_json(const red::FamilyOutcome& f) {
  Json j;
  j["min_epsilon"] = real_json(f.min_epsilon);
  j["min_epsilon_m"] = f.min_epsilon_m;
  j["max_bound"] = f.max_bound.get_str();
  j["max_bound_m"] = f.max_bound_m;
  Json members = Json::array();
  for (const red::ReductionOutcome& o : f.members) members.push_back(outcome_json(o));
  j["members"] = members;
  return j;
}

Json triple_json(const SolutionTriple& t) {
  Json j;
  j["k"] = t.k;
  j["m"] = t.m;
  j["n"] = t.n;
  j["value"] = t.value.get_str();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

PipelineConfig parse_config(const std::string& text) {
  try {
    return config_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string render_config(const PipelineConfig& config) { return dump(config_json(config)); }

std::string render_bounds(const seq::RecurrencePair& pair, const lin::AbsoluteBound& bound, int digits) {
  Json j;
  j["pair"] = pair.name();
  j["stage1"] = bounds_json(pair, bound, digits);
  return dump(j);
}

std::string render_solutions(const std::vector<SolutionTriple>& solutions) {
  Json j;
  Json list = Json::array();
  for (const SolutionTriple& t : solutions) list.push_back(triple_json(t));
  j["solutions"] = list;
  j["k_set"] = k_set(solutions);
  return dump(j);
}

std::string render_reduction(const std::vector<red::ReductionOutcome>& outcomes,
                             const red::ReductionInstance& instance) {
  Json j;
  j["instance"] = instance_json(instance, instance.tau.eval(real::kDefaultDigits).digits(), false);
  Json list = Json::array();
  for (const red::ReductionOutcome& o : outcomes) list.push_back(outcome_json(o));
  j["outcomes"] = list;
  return dump(j);
}

std::string render_certificate(const Certificate& cert) {
  const seq::RecurrencePair pair = make_pair(cert.config);
  const int digits = cert.config.precision.initial_digits;

  Json j;
  j["format"] = "dioph-certificate/1";
  j["config"] = config_json(cert.config);

  Json status;
  status["bounds_certified"] = true;
  status["k_range_consistent"] = cert.k_range_consistent;
  status["matches_expectation"] = cert.matches_expectation;
  j["status"] = status;

  Json s1 = bounds_json(pair, cert.absolute, digits);
  Json growth;
  for (const auto& [name, g] : {std::pair{"u", &cert.growth_u}, std::pair{"v", &cert.growth_v}}) {
    growth[name] = {{"n_max", g->n_max}, {"ok", g->ok()}};
  }
  s1["growth_bounds"] = growth;
  Json guards = Json::array();
  for (const GuardCheck& g : cert.guards) {
    guards.push_back({{"stage", g.stage}, {"guard", g.guard}, {"lambda_bound", real_json(g.lambda_bound)}});
  }
  s1["guards"] = guards;
  j["stage1"] = s1;

  Json s2;
  s2["tau"] = real_json(cert.table.value);
  Json table;
  table["terms"] = cert.table.size();
  table["digits"] = cert.table.digits;
  Json quotients = Json::array();
  for (const mpz_class& a : cert.table.quotients) quotients.push_back(a.get_str());
  table["quotients"] = quotients;
  s2["continued_fraction"] = table;

  Json first;
  first["instance"] = instance_json(cert.first.positive, digits, true);
  first["positive"] = outcome_json(cert.first.positive_outcome);
  first["negative"] = outcome_json(cert.first.negative_outcome);
  first["reduced_m_bound"] = cert.first.reduced.get_str();
  first["effective_m_bound"] = cert.first.effective.get_str();
  s2["first_form"] = first;

  Json second;
  second["instance"] = instance_json(cert.second.positive, digits, false);
  second["m_range"] = {1, cert.second.m_max};
  second["positive"] = family_json(cert.second.positive_outcome);
  second["negative"] = family_json(cert.second.negative_outcome);
  second["reduced_n_bound"] = cert.second.reduced.get_str();
  second["effective_n_bound"] = cert.second.effective.get_str();
  s2["second_form"] = second;
  j["stage2"] = s2;

  Json s3;
  s3["k_max"] = cert.config.k_max;
  s3["n_max"] = cert.config.n_max;
  s3["k_required"] = cert.k_required;
  s3["n_required"] = cert.n_required;
  Json sols = Json::array();
  for (const SolutionTriple& t : cert.solutions) sols.push_back(triple_json(t));
  s3["solutions"] = sols;
  s3["k_set"] = cert.ks;
  j["stage3"] = s3;

  j["assumptions"] = cert.assumptions;

  Json env;
  env["version"] = kVersion;
  env["gmp"] = gmp_version;
  env["mpfr"] = mpfr_get_version();
  env["precision"] = {{"initial_digits", cert.config.precision.initial_digits},
                      {"cap_digits", cert.config.precision.cap_digits}};
  if (cert.seconds) env["seconds"] = *cert.seconds;
  j["environment"] = env;
  return dump(j);
}

}  // namespace dioph::pipe
