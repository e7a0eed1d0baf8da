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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/pipeline.hpp"

namespace {

using dioph::real::Constant;
using dioph::real::CReal;
using dioph::real::Expr;
using dioph::real::Tri;
using dioph::seq::BinaryRecurrence;
using dioph::seq::RecurrencePair;
namespace lin = dioph::lin;
namespace pipe = dioph::pipe;
namespace real = dioph::real;
namespace red = dioph::red;
namespace seq = dioph::seq;

constexpr int kDigits = 256;
const mpz_class kLemmaM("30000000000000000000000000000000");
const char* const kP74 = "2037068391552562960855777461929676271";
const char* const kQ74 = "3731035235978315437343082205475618926";

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [fail]");
  }
};

std::string dec(const CReal& x) { return x.center_decimal(7); }

CReal ev(const Expr& e) { return e.eval(kDigits); }

Expr sci(long mantissa, int exponent) {
  Expr out(mantissa);
  for (int i = 0; i < exponent; ++i) out = out * Expr(10);
  return out;
}

bool certified_lt(const CReal& a, const CReal& b) { return real::less(a, b) == Tri::kTrue; }
bool certified_le(const CReal& a, const CReal& b) { return real::less_equal(a, b) == Tri::kTrue; }
bool certified_gt(const CReal& a, const mpq_class& b) { return real::greater(a, CReal::from_mpq(b, kDigits)) == Tri::kTrue; }

// every point of x starts with the printed decimal
bool digits_contain(const CReal& x, const mpq_class& printed, const mpq_class& ulp) {
  return CReal::from_bounds(printed, printed + ulp).contains(x);
}

void criterion1(Verdict& v) {
  const CReal c1 = real::make_constant(Constant::kC1, kDigits);
  const CReal c2 = real::make_constant(Constant::kC2, kDigits);
  v.check(digits_contain(c1, mpq_class(183157, 100000), mpq_class(1, 100000)), "c1 = " + c1.center_decimal(12));
  v.check(digits_contain(c2, mpq_class(545979, 1000000), mpq_class(1, 1000000)), "c2 = " + c2.center_decimal(12));
}

void criterion2(Verdict& v) {
  const CReal k1 = ev(lin::matveev_coefficient(lin::stage1_m_bound(RecurrencePair::fpp()).stage));
  const CReal k3 = ev(lin::matveev_coefficient(lin::stage1_m_bound(RecurrencePair::ffp()).stage));
  const CReal ref = ev(sci(779, 11));
  v.check(certified_le(k1, ev(sci(78, 12))), "Lambda_1 " + dec(k1) + " <= 7.8e13");
  v.check(certified_lt(real::abs(k1 - ref) / ref, CReal::from_mpq(mpq_class(1, 100), kDigits)),
          "within 1% of 7.79e13");
  v.check(certified_le(k3, ev(sci(598, 11))), "Lambda_3 " + dec(k3) + " <= 5.98e13");
}

void criterion3(Verdict& v) {
  const struct {
    RecurrencePair pair;
    const char* limit;
  } cases[] = {{RecurrencePair::fpp(), "5000000000000000000000000000000"},
               {RecurrencePair::ffp(), "7000000000000000000000000000000"}};
  for (const auto& c : cases) {
    const lin::StageBound b = lin::absolute_bound(c.pair).n_bound;
    const bool fails_at_n = b.value_at.nonnegative() == Tri::kTrue && b.slope_at.positive() == Tri::kTrue;
    const bool holds_below = b.value_below.negative() == Tri::kTrue;
    v.check(b.resulting_bound <= mpz_class(c.limit) && fails_at_n && holds_below,
            c.pair.name() + " N = " + CReal::from_mpz(b.resulting_bound, kDigits).center_decimal(4));
  }
}

red::ConvergentTable tau_table() {
  return red::expand(red::pair_tau(RecurrencePair::fpp()), 6 * kLemmaM, 115);
}

void criterion4(Verdict& v) {
  const red::ConvergentTable t = tau_table();
  const bool have = t.size() > 74;
  v.check(have && t.convergents[74].p == mpz_class(kP74), "p74 bit-exact");
  v.check(have && t.convergents[74].q == mpz_class(kQ74), "q74 bit-exact");
  v.check(have && t.convergents[74].q > 6 * kLemmaM, "q74 > 6M");
}

struct Campaign {
  std::string name;
  std::function<Expr(red::Sign, long)> mu;  // m ignored for single instances
  long a;
  Expr b;
  long members;  // 0: single instance
  mpq_class eps_floor;
  long expected_bound;
};

void criterion5(Verdict& v) {
  const red::ConvergentTable t = tau_table();
  const Expr log_gamma = real::log(Expr::constant(Constant::kGamma));
  const Expr gamma2 = real::pow(Expr::constant(Constant::kGamma), 2);
  const Expr alpha2 = real::pow(Expr::constant(Constant::kAlpha), 2);
  const Expr two_sqrt2 = Expr(2) * real::sqrt(Expr(2));
  const Expr sqrt5 = real::sqrt(Expr(5));
  auto signed_mu = [](red::Sign s, const Expr& mu) { return s == red::Sign::kPositive ? mu : -mu; };
  const BinaryRecurrence fib = BinaryRecurrence::fibonacci();
  const BinaryRecurrence pell = BinaryRecurrence::pell();

  const std::vector<Campaign> campaigns = {
      {"Gamma_1", [&](red::Sign s, long) { return signed_mu(s, real::log(Expr(8) / sqrt5) / log_gamma); }, 17,
       gamma2, 0, mpq_class(2, 5), 49},
      {"Gamma_3", [&](red::Sign s, long) { return signed_mu(s, real::log(two_sqrt2 / Expr(5)) / log_gamma); }, 3,
       alpha2, 0, mpq_class(1, 5), 90},
      {"Gamma_2",
       [&](red::Sign s, long m) {
         return signed_mu(s, real::log(two_sqrt2 / (sqrt5 * Expr::integer(pell.term(m)))) / log_gamma);
       },
       52, gamma2, 90, mpq_class(19, 1000), 53},
      {"Gamma_4",
       [&](red::Sign s, long m) {
         return signed_mu(s, real::log(two_sqrt2 * Expr::integer(fib.term(m)) / sqrt5) / log_gamma);
       },
       5, alpha2, 90, mpq_class(5, 1000), 94},
  };

  red::ReducePolicy pinned;
  pinned.start_index = 74;
  const Expr tau = red::pair_tau(RecurrencePair::fpp());
  for (const Campaign& c : campaigns) {
    CReal min_eps;
    mpz_class max_bound = -1;
    bool first = true;
    bool positive = true;
    for (red::Sign s : {red::Sign::kPositive, red::Sign::kNegative}) {
      red::ReductionInstance base{c.name, tau, c.mu(s, 1), Expr(c.a), c.b, kLemmaM};
      std::vector<red::ReductionOutcome> outs;
      if (c.members == 0) {
        outs.push_back(red::dp_reduce(base, t, pinned));
      } else {
        std::vector<red::FamilyMember> members;
        for (long m = 1; m <= c.members; ++m) members.push_back({m, c.mu(s, m)});
        outs = red::reduce_family(base, members, t, pinned).members;
      }
      for (const red::ReductionOutcome& o : outs) {
        positive = positive && o.epsilon.positive() == Tri::kTrue && o.convergent_index == 74;
        if (first || real::less(o.epsilon, min_eps) == Tri::kTrue) min_eps = o.epsilon;
        if (o.exponent_bound > max_bound) max_bound = o.exponent_bound;
        first = false;
      }
    }
    v.check(positive && certified_gt(min_eps, c.eps_floor),
            c.name + " eps " + dec(min_eps) + " > " + CReal::from_mpq(c.eps_floor, kDigits).center_decimal(3));
    v.check(max_bound == c.expected_bound,
            c.name + " bound " + max_bound.get_str() + " == " + std::to_string(c.expected_bound));
  }
}

std::string join(const std::vector<long>& ks) {
  std::ostringstream s;
  s << "{";
  for (std::size_t i = 0; i < ks.size(); ++i) s << (i ? "," : "") << ks[i];
  s << "}";
  return s.str();
}

void criterion6(Verdict& v) {
  const struct {
    const char* eq;
    std::vector<long> expected;
  } cases[] = {{"fpp", {1, 2, 5, 12}}, {"ffp", {1, 2, 3, 7}}};
  for (const auto& c : cases) {
    pipe::PipelineConfig config = pipe::builtin_config(c.eq);
    config.k_max = 400;
    config.n_max = 100;
    const pipe::Certificate cert = pipe::verify_theorem(config);
    v.check(cert.ks == c.expected && cert.k_range_consistent,
            std::string(c.eq) + " k-set " + join(cert.ks) + " vs " + join(c.expected));
  }
}

bool dp_oracle(std::string& note) {
  std::mt19937_64 rng(4242);
  const long squarefree[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19};
  long counterexamples = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Expr tau = real::sqrt(Expr(squarefree[rng() % std::size(squarefree)])) / Expr(1 + static_cast<long>(rng() % 4));
    mpq_class mu(static_cast<long>(rng() % 1000) + 1, 1013);
    mu.canonicalize();
    const long m_bound = 1 + static_cast<long>(rng() % 20);
    const long a = 1 + static_cast<long>(rng() % 10);
    const long b = 2 + static_cast<long>(rng() % 3);
    const red::ConvergentTable t = red::expand(tau, 6 * m_bound, 30);
    const red::ReductionOutcome r =
        red::dp_reduce(red::ReductionInstance{"oracle", tau, Expr::rational(mu), Expr(a), Expr(b), m_bound}, t);
    const long bound = r.exponent_bound.get_si();
    const CReal tv = tau.eval(64);
    for (long u = 0; u <= m_bound; ++u) {
      const CReal dist = real::nearest_int_distance(tv * u + CReal::from_mpq(mu, 64));
      for (long w = bound + 1; w <= bound + 200; ++w) {
        const CReal rhs = CReal::from_int(a, 64) / real::pow(CReal::from_int(b, 64), w);
        if (real::less(dist, rhs) != Tri::kFalse) ++counterexamples;
      }
    }
  }
  note = "DP oracle " + std::to_string(counterexamples) + " counterexamples";
  return counterexamples == 0;
}

void criterion7(Verdict& v) {
  bool tables = true;
  for (const RecurrencePair& pair : {RecurrencePair::fpp(), RecurrencePair::ffp()}) {
    tables = tables && red::verify_table(red::expand(red::pair_tau(pair), 6 * kLemmaM, 115));
  }
  v.check(tables, "convergent det +-1 and |tau - p/q| < 1/q^2");

  bool binet = true;
  bool growth = true;
  for (const BinaryRecurrence& r : {BinaryRecurrence::fibonacci(), BinaryRecurrence::pell()}) {
    const auto terms = r.terms(501);
    for (long n = 0; n <= 500 && binet; ++n) {
      binet = certified_lt(real::abs(r.binet(n).eval(kDigits) - CReal::from_mpz(terms[n], kDigits)),
                           CReal::from_mpq(mpq_class(1, 2), kDigits));
    }
    growth = growth && seq::check_growth_bounds(r, 500).ok();
  }
  v.check(binet, "Binet n <= 500");
  v.check(growth, "growth 1 <= n <= 500");

  std::string note;
  v.check(dp_oracle(note), note);

  bool search = true;
  for (const RecurrencePair& pair : {RecurrencePair::fpp(), RecurrencePair::ffp()}) {
    std::vector<pipe::SolutionTriple> naive;
    for (long k = 1; k <= 200; ++k) {
      const mpz_class uk = pair.u().term(k);
      for (long m = 1; m <= 60; ++m) {
        for (long n = m; n <= 60; ++n) {
          if (pair.v().term(m) * pair.v().term(n) == uk) naive.push_back({pair.name(), k, m, n, uk});
        }
      }
    }
    search = search && pipe::search(pair, 200, 60) == naive;
  }
  v.check(search, "search == triple loop at 200/60");
}

void criterion8(Verdict& v) {
  for (const char* eq : {"fpp", "ffp"}) {
    const std::string a = pipe::render_certificate(pipe::verify_theorem(pipe::builtin_config(eq)));
    const std::string b = pipe::render_certificate(pipe::verify_theorem(pipe::builtin_config(eq)));
    v.check(a == b, std::string(eq) + " " + std::to_string(a.size()) + " bytes identical");
  }
}

}  // namespace

int main() {
  const std::vector<void (*)(Verdict&)> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                     criterion5, criterion6, criterion7, criterion8};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i](v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failed;
    std::printf("criterion %zu: %s - %s\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
