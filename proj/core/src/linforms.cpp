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

#include "dioph/linforms.hpp"

#include <sstream>
#include <utility>

namespace dioph::lin {

using real::Tri;

QuadraticSurd QuadraticSurd::make(const mpq_class& r, long n) {
  if (n <= 0) throw ConfigError("QuadraticSurd radicand must be positive");
  const long d = seq::squarefree_part(n);
  mpz_class f2 = n / d;
  mpz_class f;
  mpz_sqrt(f.get_mpz_t(), f2.get_mpz_t());
  QuadraticSurd out;
  out.coeff = r * f;
  out.coeff.canonicalize();
  out.radicand = d;
  return out;
}

QuadraticSurd QuadraticSurd::inverse() const {
  if (coeff == 0) throw DomainError("inverse of zero surd");
  // 1 / (r sqrt d) = sqrt(d) / (r d)
  QuadraticSurd out;
  out.coeff = 1 / (coeff * radicand);
  out.radicand = radicand;
  return out;
}

QuadraticSurd QuadraticSurd::operator*(const QuadraticSurd& other) const {
  // r1 sqrt(d1) r2 sqrt(d2) = r1 r2 sqrt(d1 d2)
  return make(coeff * other.coeff, radicand * other.radicand);
}

QuadraticSurd QuadraticSurd::operator/(const mpz_class& divisor) const {
  QuadraticSurd out = *this;
  out.coeff /= divisor;
  out.coeff.canonicalize();
  return out;
}

mpz_class QuadraticSurd::leading_coefficient() const {
  // rational p/q: qX - p; otherwise eta^2 = P/Q in lowest terms and QX^2 - P is primitive
  if (radicand == 1) return coeff.get_den();
  return square().get_den();
}

Expr QuadraticSurd::value() const {
  const Expr r = Expr::rational(coeff);
  if (radicand == 1) return r;
  return r * real::sqrt(Expr(radicand));
}

Expr QuadraticSurd::height() const {
  // h = (1/deg) (log a0 + sum log max(|conjugate|, 1)); both conjugates have |eta|
  const Expr log_abs = real::log(real::abs(value()));
  const Expr log_a0 = real::log(Expr::integer(leading_coefficient()));
  if (radicand == 1) {
    const mpz_class p = abs(coeff.get_num());
    const mpz_class q = coeff.get_den();
    return real::log(Expr::integer(p > q ? p : q));
  }
  return log_a0 / Expr(2) + real::max(Expr(0), log_abs);
}

std::string QuadraticSurd::to_string() const {
  std::ostringstream out;
  out << coeff.get_str();
  if (radicand != 1) out << "*sqrt(" << radicand << ")";
  return out.str();
}

QuadraticSurd first_form_eta(const seq::RecurrencePair& pair) {
  // s_U / s_V^2 = Delta_V / sqrt(Delta_U)
  const long du = pair.u().discriminant();
  const long dv = pair.v().discriminant();
  return QuadraticSurd::make(mpq_class(dv, du), du);
}

QuadraticSurd second_form_eta_base(const seq::RecurrencePair& pair) {
  // s_U / s_V = sqrt(Delta_V) / sqrt(Delta_U) = sqrt(Delta_U Delta_V) / Delta_U
  const long du = pair.u().discriminant();
  const long dv = pair.v().discriminant();
  return QuadraticSurd::make(mpq_class(1, du), du * dv);
}

Expr first_form_rhs(const seq::RecurrencePair& pair) {
  // |s_U beta^k - s_V^2 (...)| <= 2 max(s_U, 3 s_V^2) rho_V^(n-m)
  return Expr(2) * real::max(first_form_eta(pair).value(), Expr(3));
}

Expr second_form_rhs(const seq::RecurrencePair& pair, int digits) {
  // 1 / (rho_U^k rho_V^n) <= (rho_V^3 / rho_U) rho_V^(-2n) from the growth bounds
  const Expr ratio = real::pow(pair.v().root_dom(), 3) / pair.u().root_dom();
  const mpz_class factor = real::ceil_hi(ratio.eval(digits));
  const Expr cross = Expr::integer(factor > 1 ? factor : mpz_class(1));
  return Expr(2) * real::max(second_form_eta_base(pair).value(), Expr(1)) * cross;
}

namespace {

AlgebraicParam root_param(const seq::BinaryRecurrence& rec, int field_degree, std::string exponent) {
  AlgebraicParam p;
  p.description = "dominant root of " + rec.name();
  // a unit whose conjugate has absolute value < 1
  p.height_bound = real::log(rec.root_dom()) / Expr(2);
  p.log_abs = real::log(rec.root_dom());
  p.a_value = real::max(real::max(Expr(field_degree) * p.height_bound, p.log_abs),
                        Expr::rational(mpq_class(16, 100)));
  p.exponent = std::move(exponent);
  return p;
}

}  // namespace

LinearFormStage build_stage(StageKind kind, const seq::RecurrencePair& pair,
                            const std::optional<Expr>& a1_coefficient) {
  LinearFormStage stage;
  stage.kind = kind;
  stage.l = 3;
  stage.field_degree = 4;
  stage.d_coeff = seq::coarse_index_coefficient(pair);
  stage.log_root_u = real::log(pair.u().root_dom());
  stage.log_root_v = real::log(pair.v().root_dom());
  const Expr rho_v_sq = real::pow(pair.v().root_dom(), 2);

  AlgebraicParam eta1;
  if (kind == StageKind::kFirst) {
    stage.name = "Lambda_" + std::to_string(pair.first_form_number());
    stage.eta1_base = first_form_eta(pair);
    eta1.description = stage.eta1_base.to_string();
    eta1.height_bound = stage.eta1_base.height();
    eta1.log_abs = real::abs(real::log(stage.eta1_base.value()));
    eta1.a_value = real::max(real::max(Expr(stage.field_degree) * eta1.height_bound, eta1.log_abs),
                             Expr::rational(mpq_class(16, 100)));
    eta1.exponent = "1";
    stage.rhs_coeff = first_form_rhs(pair);
    stage.decay_base = rho_v_sq;
    stage.decay_var = DecayVar::kM;
  } else {
    if (!a1_coefficient) {
      throw ConfigError("second linear form needs an A_1 coefficient from the m-bound");
    }
    stage.name = "Lambda_" + std::to_string(pair.first_form_number() + 1);
    stage.eta1_base = second_form_eta_base(pair);
    eta1.description = stage.eta1_base.to_string() + " / " + pair.v().name() + "_m";
    eta1.a_value = *a1_coefficient;
    eta1.height_bound = *a1_coefficient / Expr(stage.field_degree);
    eta1.log_abs = *a1_coefficient;
    eta1.log_power = 1;
    eta1.exponent = "1";
    stage.rhs_coeff = second_form_rhs(pair);
    stage.decay_base = rho_v_sq;
    stage.decay_var = DecayVar::kN;
  }
  stage.params.push_back(std::move(eta1));
  stage.params.push_back(root_param(pair.u(), stage.field_degree, "k"));
  stage.params.push_back(root_param(pair.v(), stage.field_degree, kind == StageKind::kFirst ? "-(m+n)" : "-n"));
  return stage;
}

Expr matveev_coefficient(const LinearFormStage& stage) {
  const Expr l(stage.l);
  const Expr d(stage.field_degree);
  Expr out = Expr(7) / Expr(5) * real::pow(Expr(30), stage.l + 3) * real::pow(l, 4) * real::sqrt(l) *
             real::pow(d, 2) * (Expr(1) + real::log(d));
  for (const AlgebraicParam& p : stage.params) out = out * p.a_value;
  return out;
}

int matveev_log_power(const LinearFormStage& stage) {
  int power = 1;
  for (const AlgebraicParam& p : stage.params) power += p.log_power;
  return power;
}

CReal matveev_lower_bound(const LinearFormStage& stage, const mpz_class& d_value, int digits) {
  if (d_value < 3) throw ConfigError("Matveev bound needs D >= 3");
  const Expr log_term = Expr(1) + real::log(Expr::integer(d_value));
  return (matveev_coefficient(stage) * real::pow(log_term, matveev_log_power(stage))).eval(digits);
}

namespace {

Expr growth_term(const Expr& coefficient, long s, int power, const Expr& x) {
  if (power == 0) return coefficient;
  return coefficient * real::pow(Expr(1) + real::log(Expr(s) * x), power);
}

// L x - offset - C (1 + log(s x))^p
Expr difference(const Expr& linear_coeff, const Expr& offset, const Expr& coefficient, long s, int power,
                const mpz_class& x) {
  const Expr xe = Expr::integer(x);
  return linear_coeff * xe - offset - growth_term(coefficient, s, power, xe);
}

// L - C p (1 + log(s x))^(p-1) / x
Expr difference_slope(const Expr& linear_coeff, const Expr& coefficient, long s, int power,
                      const mpz_class& x) {
  if (power == 0) return linear_coeff;
  const Expr xe = Expr::integer(x);
  return linear_coeff - coefficient * Expr(power) *
                            real::pow(Expr(1) + real::log(Expr(s) * xe), power - 1) / xe;
}

constexpr int kMaxFixedPointIterations = 200;

}  // namespace

StageBound solve_exponent_bound(const Expr& linear_coeff, const Expr& offset, const Expr& coefficient,
                                long s, int power, const real::PrecisionPolicy& policy) {
  if (power < 0 || power > 2) throw ConfigError("solve_exponent_bound supports p in {0, 1, 2}");
  if (s < 1) throw ConfigError("solve_exponent_bound needs s >= 1");
  const int digits = policy.initial_digits;
  if (linear_coeff.eval(digits).positive() != Tri::kTrue || coefficient.eval(digits).positive() != Tri::kTrue) {
    throw ConfigError("solve_exponent_bound needs linear_coeff > 0 and C > 0");
  }

  StageBound out;
  out.coefficient = coefficient;
  out.power = power;
  out.s = s;
  out.linear_coeff = linear_coeff;
  out.offset = offset;

  // x <- ceil((C (1 + log s x)^p + offset) / L) from x = ceil(C)
  mpz_class x = real::ceil_hi(coefficient.eval(digits));
  if (x < 1) x = 1;
  for (;;) {
    const Expr xe = Expr::integer(x);
    mpz_class next = real::ceil_hi(((growth_term(coefficient, s, power, xe) + offset) / linear_coeff).eval(digits));
    if (next < 1) next = 1;
    ++out.iterations;
    if (next == x) break;
    x = next;
    if (out.iterations > kMaxFixedPointIterations) {
      throw PrecisionError("solve_exponent_bound: fixed-point iteration did not settle");
    }
  }

  // Move x to the exact threshold: difference < 0 at x - 1 and >= 0 at x.
  mpz_class n = x;
  for (int step = 0;; ++step) {
    if (step > kMaxFixedPointIterations) throw PrecisionError("solve_exponent_bound: threshold search diverged");
    const bool fails_at = real::decide(policy, "bound inequality at N", [&](int d) {
      return difference(linear_coeff, offset, coefficient, s, power, n).eval(d).nonnegative();
    });
    if (!fails_at) {
      ++n;
      continue;
    }
    if (n == 1) break;
    const bool fails_below = real::decide(policy, "bound inequality at N - 1", [&](int d) {
      return difference(linear_coeff, offset, coefficient, s, power, n - 1).eval(d).nonnegative();
    });
    if (fails_below) {
      --n;
      continue;
    }
    break;
  }

  const bool increasing = real::decide(policy, "slope of bound difference at N", [&](int d) {
    return difference_slope(linear_coeff, coefficient, s, power, n).eval(d).positive();
  });
  if (!increasing) {
    throw PrecisionError("solve_exponent_bound: difference not increasing at the threshold");
  }

  out.resulting_bound = n;
  out.value_at = difference(linear_coeff, offset, coefficient, s, power, n).eval(digits);
  out.value_below = n > 1 ? difference(linear_coeff, offset, coefficient, s, power, n - 1).eval(digits)
                          : CReal::from_int(-1, digits);
  out.slope_at = difference_slope(linear_coeff, coefficient, s, power, n).eval(digits);
  return out;
}

MBound stage1_m_bound(const seq::RecurrencePair& pair) {
  MBound out;
  out.stage = build_stage(StageKind::kFirst, pair);
  out.s = out.stage.d_coeff;
  out.matveev = matveev_coefficient(out.stage);
  // 2m log rho_V - log R_1 < K (1 + log s n)
  out.coefficient = (out.matveev + real::max(Expr(0), real::log(out.stage.rhs_coeff))) / Expr(2);

  const Expr log_rho_v = real::log(pair.v().root_dom());
  const Expr half_log_du = real::log(Expr(pair.u().discriminant())) / Expr(2);
  const Expr half_log_dv = real::log(Expr(pair.v().discriminant())) / Expr(2);
  const Expr height_off =
      real::max(Expr(0), real::max(half_log_du - log_rho_v, half_log_dv - log_rho_v));
  const Expr log_ratio = real::abs(real::log(second_form_eta_base(pair).value()));
  out.height_offset = real::max(height_off, log_ratio);
  out.a1_coefficient = Expr(out.stage.field_degree) * (out.coefficient + out.height_offset);
  return out;
}

AbsoluteBound absolute_bound(const seq::RecurrencePair& pair, const real::PrecisionPolicy& policy) {
  AbsoluteBound out;
  out.m_bound = stage1_m_bound(pair);
  out.second = build_stage(StageKind::kSecond, pair, out.m_bound.a1_coefficient);
  out.matveev = matveev_coefficient(out.second);
  // 2n log rho_V - log R_2 < K (1 + log s n)^2
  const Expr linear = Expr(2) * real::log(pair.v().root_dom());
  out.n_bound = solve_exponent_bound(linear, real::log(out.second.rhs_coeff), out.matveev,
                                     out.second.d_coeff, matveev_log_power(out.second), policy);
  return out;
}

Expr linear_form_value(const LinearFormStage& stage, const seq::RecurrencePair& pair, long k, long m,
                       long n) {
  Expr eta1 = stage.eta1_base.value();
  long v_exponent = m + n;
  if (stage.kind == StageKind::kSecond) {
    eta1 = eta1 / Expr::integer(pair.v().term(static_cast<std::size_t>(m)));
    v_exponent = n;
  }
  return eta1 * real::pow(pair.u().root_dom(), k) * real::pow(pair.v().root_dom(), -v_exponent) - Expr(1);
}

}  // namespace dioph::lin
