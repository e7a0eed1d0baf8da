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

#include "dioph/reduction.hpp"

#include <utility>

namespace dioph::red {

using real::Tri;

namespace {

// Euclid on an exact rational. The last quotient is dropped: it is the only
// one that differs between [.., a] and [.., a - 1, 1].
std::vector<mpz_class> rational_quotients(mpq_class r, std::size_t limit) {
  std::vector<mpz_class> out;
  mpz_class num = r.get_num();
  mpz_class den = r.get_den();
  while (den != 0 && out.size() <= limit) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class rem = num - a * den;
    out.push_back(a);
    num = std::move(den);
    den = std::move(rem);
  }
  if (den == 0 && !out.empty()) out.pop_back();
  return out;
}

std::vector<Convergent> convergents_of(const std::vector<mpz_class>& a) {
  std::vector<Convergent> out;
  out.reserve(a.size());
  mpz_class p_prev = 1, q_prev = 0, p = a.empty() ? mpz_class(0) : a[0], q = 1;
  if (a.empty()) return out;
  out.push_back({p, q});
  for (std::size_t i = 1; i < a.size(); ++i) {
    mpz_class pn = a[i] * p + p_prev;
    mpz_class qn = a[i] * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(pn);
    q = std::move(qn);
    out.push_back({p, q});
  }
  return out;
}

std::string sign_suffix(Sign s) { return s == Sign::kPositive ? "+" : "-"; }

bool u_root_is_smaller(const seq::RecurrencePair& pair, int digits) {
  return real::decide(real::PrecisionPolicy{digits, real::kDefaultCapDigits}, "root comparison", [&](int d) {
    return real::less(pair.u().root_dom().eval(d), pair.v().root_dom().eval(d));
  });
}

Expr stage_eta1(const lin::LinearFormStage& stage, const seq::RecurrencePair& pair, std::optional<long> m) {
  Expr eta1 = stage.eta1_base.value();
  if (stage.kind == lin::StageKind::kSecond) {
    if (!m || *m < 1) throw ConfigError(stage.name + ": second linear form needs m >= 1");
    eta1 = eta1 / Expr::integer(pair.v().term(static_cast<std::size_t>(*m)));
  }
  return eta1;
}

// Gamma = log eta_1 + k log rho_U - X log rho_V.
// rho_U < rho_V: Gamma / log rho_V = k tau - X + log eta_1 / log rho_V.
// rho_U > rho_V: -Gamma / log rho_U = X tau - k - log eta_1 / log rho_U.
// The other sign of Gamma is the lemma for (-tau, -mu); ||-t|| = ||t|| so the
// same table serves.
Expr lemma_mu(const lin::LinearFormStage& stage, const seq::RecurrencePair& pair, Sign sign,
              std::optional<long> m, bool u_smaller) {
  const Expr log_eta = real::log(stage_eta1(stage, pair, m));
  Expr mu = u_smaller ? log_eta / stage.log_root_v : -log_eta / stage.log_root_u;
  if (sign == Sign::kNegative) mu = -mu;
  return mu;
}

}  // namespace

ConvergentTable expand(const Expr& x, const mpz_class& min_q, std::size_t min_terms,
                       const real::PrecisionPolicy& policy) {
  auto attempt = [&](int digits) -> std::optional<ConvergentTable> {
    const CReal v = x.eval(digits);
    const std::size_t limit = static_cast<std::size_t>(digits) * 4;
    const std::vector<mpz_class> a = rational_quotients(v.lo_q(), limit);
    const std::vector<mpz_class> b = rational_quotients(v.hi_q(), limit);
    std::vector<mpz_class> common;
    for (std::size_t i = 0; i < a.size() && i < b.size() && a[i] == b[i]; ++i) common.push_back(a[i]);

    const std::vector<Convergent> conv = convergents_of(common);
    for (std::size_t i = 0; i < conv.size(); ++i) {
      if (conv[i].q > min_q && i + 1 >= min_terms) {
        ConvergentTable t;
        t.x = x;
        t.value = v;
        t.digits = digits;
        t.quotients.assign(common.begin(), common.begin() + static_cast<std::ptrdiff_t>(i + 1));
        t.convergents.assign(conv.begin(), conv.begin() + static_cast<std::ptrdiff_t>(i + 1));
        return t;
      }
    }
    return std::nullopt;
  };
  return real::with_refinement(policy, "continued fraction of " + x.to_string(), attempt);
}

bool verify_table(const ConvergentTable& table) {
  const std::size_t n = table.size();
  if (n == 0 || table.quotients.size() != n) return false;
  for (std::size_t i = 1; i < n; ++i) {
    if (table.quotients[i] < 1) return false;
    const Convergent& c = table.convergents[i];
    const Convergent& prev = table.convergents[i - 1];
    const mpz_class det = c.p * prev.q - prev.p * c.q;
    if (det != 1 && det != -1) return false;
    if (c.q < prev.q || (i >= 2 && c.q == prev.q)) return false;
  }
  for (const Convergent& c : table.convergents) {
    const CReal r = CReal::from_mpq(mpq_class(c.p, c.q), table.digits);
    const CReal err = real::abs(table.value - r);
    const CReal limit = CReal::from_mpq(mpq_class(1, c.q * c.q), table.digits);
    if (real::less(err, limit) != Tri::kTrue) return false;
  }
  return true;
}

CReal dp_epsilon(const mpz_class& q, const CReal& tau, const CReal& mu, const mpz_class& m_bound) {
  const int digits = std::min(tau.digits(), mu.digits());
  const CReal qr = CReal::from_mpz(q, digits);
  const CReal mr = CReal::from_mpz(m_bound, digits);
  return real::nearest_int_distance(mu * qr) - mr * real::nearest_int_distance(tau * qr);
}

ReductionOutcome dp_reduce(const ReductionInstance& inst, const ConvergentTable& table,
                           const ReducePolicy& policy) {
  if (inst.m_bound < 1) throw ConfigError(inst.label + ": M must be >= 1");
  const mpz_class six_m = 6 * inst.m_bound;
  std::size_t start = table.size();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.convergents[i].q > six_m) {
      start = i;
      break;
    }
  }
  if (policy.start_index && *policy.start_index > start) start = *policy.start_index;

  ReductionOutcome out;
  out.label = inst.label;

  const real::PrecisionPolicy& prec = policy.precision;
  for (std::size_t i = start; i < table.size(); ++i) {
    const Convergent& c = table.convergents[i];
    // kTrue: eps > 0, kFalse: eps <= 0, computed at the digits that decided it.
    struct Probe {
      bool positive;
      CReal eps;
      int digits;
    };
    const Probe probe = real::with_refinement(prec, inst.label + ": sign of eps", [&](int d) -> std::optional<Probe> {
      try {
        const CReal eps = dp_epsilon(c.q, inst.tau.eval(d), inst.mu.eval(d), inst.m_bound);
        const Tri pos = eps.positive();
        if (pos == Tri::kUnknown) return std::nullopt;
        return Probe{pos == Tri::kTrue, eps, d};
      } catch (const PrecisionError&) {
        return std::nullopt;
      }
    });
    if (!probe.positive) {
      if (!policy.advance) {
        throw PrecisionError(inst.label + ": eps <= 0 at convergent " + std::to_string(i));
      }
      out.skipped.push_back(i);
      continue;
    }
    const int d = probe.digits;
    const CReal a = inst.a.eval(d);
    const CReal b = inst.b.eval(d);
    if (a.positive() != Tri::kTrue || real::greater(b, CReal::from_int(1, d)) != Tri::kTrue) {
      throw ConfigError(inst.label + ": need A > 0 and B > 1");
    }
    out.convergent_index = i;
    out.p = c.p;
    out.q = c.q;
    out.q_exceeds_6m = c.q > six_m;
    out.epsilon = probe.eps;
    out.raw_bound = real::log(a * CReal::from_mpz(c.q, d) / probe.eps) / real::log(b);
    out.exponent_bound = real::floor_hi(out.raw_bound);
    if (out.exponent_bound < 0) out.exponent_bound = 0;
    return out;
  }
  throw PrecisionError(inst.label + ": no convergent with q > 6M and eps > 0 in a table of " +
                       std::to_string(table.size()) + " terms");
}

FamilyOutcome reduce_family(const ReductionInstance& base, const std::vector<FamilyMember>& members,
                            const ConvergentTable& table, const ReducePolicy& policy) {
  if (members.empty()) throw ConfigError(base.label + ": empty family");
  FamilyOutcome out;
  out.members.reserve(members.size());
  ReducePolicy strict = policy;
  strict.advance = false;
  for (const FamilyMember& member : members) {
    ReductionInstance inst = base;
    inst.mu = member.mu;
    inst.label = base.label + " m=" + std::to_string(member.m);
    ReductionOutcome r;
    try {
      r = dp_reduce(inst, table, strict);
    } catch (const PrecisionError& e) {
      throw PrecisionError("family member m=" + std::to_string(member.m) + ": " + e.what());
    }
    if (out.members.empty() || real::less(r.epsilon, out.min_epsilon) == Tri::kTrue) {
      out.min_epsilon = r.epsilon;
      out.min_epsilon_m = member.m;
    }
    if (out.members.empty() || r.exponent_bound > out.max_bound) {
      out.max_bound = r.exponent_bound;
      out.max_bound_m = member.m;
    }
    out.members.push_back(std::move(r));
  }
  return out;
}

std::string_view to_string(Sign s) { return s == Sign::kPositive ? "positive" : "negative"; }

Expr pair_tau(const seq::RecurrencePair& pair, int digits) {
  return u_root_is_smaller(pair, digits) ? pair.index_ratio_inverse() : pair.index_ratio();
}

ReductionInstance gamma_to_lemma_form(const lin::LinearFormStage& stage, const seq::RecurrencePair& pair,
                                      Sign sign, const mpz_class& m_bound, std::optional<long> m,
                                      int digits) {
  const bool u_smaller = u_root_is_smaller(pair, digits);
  const Expr log_big = u_smaller ? stage.log_root_v : stage.log_root_u;
  ReductionInstance inst;
  inst.label = stage.name + sign_suffix(sign);
  if (stage.kind == lin::StageKind::kSecond && m) inst.label += " m=" + std::to_string(*m);
  inst.tau = pair_tau(pair, digits);
  inst.mu = lemma_mu(stage, pair, sign, stage.kind == lin::StageKind::kSecond ? m : std::nullopt, u_smaller);
  inst.a = Expr::integer(real::ceil_hi((Expr(2) * stage.rhs_coeff / log_big).eval(digits)));
  inst.b = stage.decay_base;
  inst.m_bound = m_bound;
  return inst;
}

std::vector<FamilyMember> family_members(const lin::LinearFormStage& stage, const seq::RecurrencePair& pair,
                                         Sign sign, long m_max, int digits) {
  if (stage.kind != lin::StageKind::kSecond) throw ConfigError("family_members needs the second linear form");
  const bool u_smaller = u_root_is_smaller(pair, digits);
  std::vector<FamilyMember> out;
  for (long m = 1; m <= m_max; ++m) out.push_back({m, lemma_mu(stage, pair, sign, m, u_smaller)});
  return out;
}

}  // namespace dioph::red
