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

#include "dioph/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <tuple>
#include <utility>

namespace dioph::pipe {

using real::Tri;

namespace {

// Terms past the reduction start kept in the table so eps <= 0 can advance.
constexpr std::size_t kExtraConvergents = 40;

mpz_class max_of(const mpz_class& a, const mpz_class& b) { return a > b ? a : b; }

}  // namespace

void apply_precision_env(PipelineConfig& config) {
  if (const char* cap = std::getenv("DIOPH_PRECISION_CAP"); cap != nullptr && *cap != '\0') {
    config.precision.cap_digits = real::PrecisionPolicy::from_env().cap_digits;
  }
}

namespace {

bool same_spec(const seq::RecurrenceSpec& a, const seq::RecurrenceSpec& b) {
  return a.a == b.a && a.b == b.b && a.u0 == b.u0 && a.u1 == b.u1;
}

}  // namespace

bool PipelineConfig::builtin() const {
  if (equation == "fpp") return same_spec(u, seq::fibonacci_spec()) && same_spec(v, seq::pell_spec());
  if (equation == "ffp") return same_spec(u, seq::pell_spec()) && same_spec(v, seq::fibonacci_spec());
  return false;
}

PipelineConfig builtin_config(const std::string& equation) {
  PipelineConfig config;
  config.equation = equation;
  if (equation == "fpp") {
    config.u = seq::fibonacci_spec();
    config.v = seq::pell_spec();
    config.first_form_number = 1;
  } else if (equation == "ffp") {
    config.u = seq::pell_spec();
    config.v = seq::fibonacci_spec();
    config.first_form_number = 3;
  } else {
    throw ConfigError("unknown equation '" + equation + "' (expected fpp or ffp)");
  }
  apply_precision_env(config);
  return config;
}

seq::RecurrencePair make_pair(const PipelineConfig& config) {
  if (config.k_max < 1 || config.n_max < 1) throw ConfigError("k_max and n_max must be >= 1");
  if (config.m_guard < 1 || config.n_guard < 1) throw ConfigError("guards must be >= 1");
  if (config.lemma_m < 1) throw ConfigError("lemma_m must be >= 1");
  if (config.precision.initial_digits < real::kMinConstantDigits ||
      config.precision.cap_digits < config.precision.initial_digits) {
    throw ConfigError("precision: need " + std::to_string(real::kMinConstantDigits) +
                      " <= initial_digits <= cap_digits");
  }
  seq::BinaryRecurrence u(config.u);
  seq::BinaryRecurrence v(config.v);
  for (const seq::BinaryRecurrence* r : {&u, &v}) {
    if (!r->is_lucas_normalized()) {
      throw ConfigError("recurrence '" + r->name() + "': the linear forms need u0 = 0, u1 = 1");
    }
  }
  return seq::RecurrencePair(config.equation, std::move(u), std::move(v), config.first_form_number);
}

std::vector<SolutionTriple> search(const seq::RecurrencePair& pair, long k_max, long n_max) {
  if (k_max < 1 || n_max < 1) throw ConfigError("search needs k_max, n_max >= 1");
  const std::vector<mpz_class> u = pair.u().terms(static_cast<std::size_t>(k_max) + 1);
  const std::vector<mpz_class> v = pair.v().terms(static_cast<std::size_t>(n_max) + 1);

  struct Product {
    mpz_class value;
    long m;
    long n;
  };
  std::vector<Product> table;
  table.reserve(static_cast<std::size_t>(n_max * (n_max + 1) / 2));
  for (long m = 1; m <= n_max; ++m) {
    for (long n = m; n <= n_max; ++n) table.push_back({v[m] * v[n], m, n});
  }
  auto key = [](const Product& p) { return std::tie(p.value, p.m, p.n); };
  std::sort(table.begin(), table.end(), [&](const Product& a, const Product& b) { return key(a) < key(b); });

  std::vector<SolutionTriple> out;
  for (long k = 1; k <= k_max; ++k) {
    auto lo = std::lower_bound(table.begin(), table.end(), u[k],
                               [](const Product& p, const mpz_class& x) { return p.value < x; });
    for (auto it = lo; it != table.end() && it->value == u[k]; ++it) {
      out.push_back({pair.name(), k, it->m, it->n, it->value});
    }
  }
  return out;
}

std::vector<long> k_set(const std::vector<SolutionTriple>& solutions) {
  std::vector<long> ks;
  for (const SolutionTriple& s : solutions) ks.push_back(s.k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

Certificate verify_theorem(const PipelineConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const seq::RecurrencePair pair = make_pair(config);
  const real::PrecisionPolicy& policy = config.precision;
  const int digits = policy.initial_digits;

  Certificate cert;
  cert.config = config;
  cert.pair_name = pair.name();

  // stage 1
  cert.growth_u = seq::check_growth_bounds(pair.u(), kGrowthCheckLimit, policy);
  cert.growth_v = seq::check_growth_bounds(pair.v(), kGrowthCheckLimit, policy);
  for (const seq::GrowthReport* g : {&cert.growth_u, &cert.growth_v}) {
    if (!g->ok()) {
      throw ConfigError("growth inequalities fail at n = " + std::to_string(g->violations.front().n));
    }
  }
  cert.index_ratio = pair.index_ratio().eval(digits);
  cert.absolute = lin::absolute_bound(pair, policy);
  const mpz_class& n_abs = cert.absolute.n_bound.resulting_bound;
  const long s = cert.absolute.m_bound.s;
  if (config.lemma_m < s * n_abs) {
    throw PrecisionError("reduction budget: lemma_m = " + config.lemma_m.get_str() + " is below " +
                         std::to_string(s) + " * N = " + mpz_class(s * n_abs).get_str());
  }

  const lin::LinearFormStage& first_stage = cert.absolute.m_bound.stage;
  const lin::LinearFormStage& second_stage = cert.absolute.second;
  for (const auto& [stage, guard] : {std::pair{&first_stage, config.m_guard}, std::pair{&second_stage, config.n_guard}}) {
    const Expr bound = stage->rhs_coeff * real::pow(stage->decay_base, -guard);
    const bool small = real::decide(policy, stage->name + " guard", [&](int d) {
      return real::less(bound.eval(d), CReal::from_mpq(mpq_class(1, 4), d));
    });
    if (!small) {
      throw ConfigError(stage->name + ": guard " + std::to_string(guard) + " does not give |Lambda| < 1/4");
    }
    cert.guards.push_back({stage->name, guard, bound.eval(digits)});
  }

  // stage 2
  const Expr tau = red::pair_tau(pair, digits);
  const std::size_t min_terms = (config.convergent_index ? *config.convergent_index + 1 : 0) + kExtraConvergents;
  cert.table = red::expand(tau, 6 * config.lemma_m, min_terms, policy);
  red::ReducePolicy rp;
  rp.start_index = config.convergent_index;
  rp.precision = policy;

  FormReduction& first = cert.first;
  first.positive = red::gamma_to_lemma_form(first_stage, pair, red::Sign::kPositive, config.lemma_m, std::nullopt, digits);
  const red::ReductionInstance first_neg =
      red::gamma_to_lemma_form(first_stage, pair, red::Sign::kNegative, config.lemma_m, std::nullopt, digits);
  first.positive_outcome = red::dp_reduce(first.positive, cert.table, rp);
  first.negative_outcome = red::dp_reduce(first_neg, cert.table, rp);
  first.reduced = max_of(first.positive_outcome.exponent_bound, first.negative_outcome.exponent_bound);
  first.effective = max_of(first.reduced, config.m_guard - 1);

  FamilyReduction& second = cert.second;
  second.m_max = first.effective.get_si();
  second.positive = red::gamma_to_lemma_form(second_stage, pair, red::Sign::kPositive, config.lemma_m, 1, digits);
  second.positive.label = second_stage.name + "+";
  second.positive_outcome = red::reduce_family(
      second.positive, red::family_members(second_stage, pair, red::Sign::kPositive, second.m_max, digits),
      cert.table, rp);
  red::ReductionInstance second_neg = second.positive;
  second_neg.label = second_stage.name + "-";
  second.negative_outcome = red::reduce_family(
      second_neg, red::family_members(second_stage, pair, red::Sign::kNegative, second.m_max, digits), cert.table,
      rp);
  second.reduced = max_of(second.positive_outcome.max_bound, second.negative_outcome.max_bound);
  second.effective = max_of(second.reduced, config.n_guard - 1);

  // stage 3
  cert.n_required = std::max(second.effective, first.effective).get_si();
  cert.k_required = seq::k_range(pair, cert.n_required, cert.n_required, digits).k_hi;
  if (cert.n_required > config.n_max || cert.k_required > config.k_max) {
    throw PrecisionError("search budget: need k <= " + std::to_string(cert.k_required) + ", n <= " +
                         std::to_string(cert.n_required) + " but configured k_max = " +
                         std::to_string(config.k_max) + ", n_max = " + std::to_string(config.n_max));
  }
  cert.solutions = search(pair, config.k_max, config.n_max);
  cert.ks = k_set(cert.solutions);
  for (const SolutionTriple& t : cert.solutions) {
    const seq::KRange r = seq::k_range(pair, t.m, t.n, digits);
    if (t.k < r.k_lo || t.k > r.k_hi) cert.k_range_consistent = false;
  }
  if (config.expect_k) cert.matches_expectation = *config.expect_k == cert.ks;

  cert.assumptions = {
      "Matveev's lower bound for linear forms in logarithms is applied as a theorem; its constant is evaluated, "
      "not derived.",
      "The linear forms are nonzero. If one vanished, eta_1 times a power of the dominant root of U would equal "
      "a power of the dominant root of V; comparing norms in the two distinct quadratic fields excludes this. "
      "This is not computed.",
      "The reduction lemma (0 < x tau - y + mu < A B^-k, q > 6M, eps > 0 implies k < log(Aq/eps)/log B) is "
      "applied as a theorem.",
  };
  if (config.builtin()) {
    cert.assumptions.push_back("Growth inequalities root^(n-2) <= u_n <= root^(n-1) hold for all n >= 1 by "
                               "induction; certified numerically for n <= " +
                               std::to_string(kGrowthCheckLimit) + ".");
  } else {
    cert.assumptions.push_back("Growth inequalities root^(n-2) <= u_n <= root^(n-1) are certified for n <= " +
                               std::to_string(kGrowthCheckLimit) + " only and assumed beyond.");
  }

  if (config.timing) {
    cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return cert;
}

}  // namespace dioph::pipe
