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

// Linear forms in three logarithms and the absolute index bounds they give.
//
// For U_k = V_m V_n with Binet scales s_U, s_V and dominant roots rho_U,
// rho_V the two forms are
//
//   first:  Lambda = (s_U / s_V^2) rho_U^k rho_V^-(m+n) - 1 < R_1 rho_V^-2m
//   second: Lambda = (s_U / (s_V V_m)) rho_U^k rho_V^-n - 1 < R_2 rho_V^-2n
//
// Matveev's lower bound for log|Lambda| against the right-hand decay first
// bounds m in terms of log n, then n absolutely.

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dioph/realcore.hpp"
#include "dioph/sequences.hpp"

namespace dioph::lin {

using real::CReal;
using real::Expr;

// coeff * sqrt(radicand), radicand squarefree (1 means rational).
struct QuadraticSurd {
  mpq_class coeff = 1;
  long radicand = 1;

  // r * sqrt(n) for any n > 0, normalised so the radicand is squarefree.
  static QuadraticSurd make(const mpq_class& r, long n);

  QuadraticSurd inverse() const;
  QuadraticSurd operator*(const QuadraticSurd& other) const;
  QuadraticSurd operator/(const mpz_class& divisor) const;

  // Its square, which is rational.
  mpq_class square() const { return coeff * coeff * radicand; }
  // Leading coefficient of the primitive minimal polynomial over Z.
  mpz_class leading_coefficient() const;
  Expr value() const;
  // Absolute logarithmic height, from the minimal polynomial.
  Expr height() const;
  std::string to_string() const;
};

// One eta_j of a linear form. A = a_value * (1 + log D)^log_power.
struct AlgebraicParam {
  std::string description;
  Expr height_bound;
  Expr log_abs;
  Expr a_value;
  int log_power = 0;
  std::string exponent;
};

enum class StageKind { kFirst, kSecond };
enum class DecayVar { kM, kN };

struct LinearFormStage {
  std::string name;
  StageKind kind = StageKind::kFirst;
  int l = 3;
  int field_degree = 4;
  std::vector<AlgebraicParam> params;
  // D = max(|d_j|, 3) <= d_coeff * n
  long d_coeff = 4;
  Expr rhs_coeff;
  Expr decay_base;
  DecayVar decay_var = DecayVar::kM;

  // eta_1 is eta1_base for the first form and eta1_base / V_m for the second.
  QuadraticSurd eta1_base;
  Expr log_root_u;
  Expr log_root_v;
};

// Right-hand constants R_1 and R_2 derived from the Binet scales.
Expr first_form_rhs(const seq::RecurrencePair& pair);
Expr second_form_rhs(const seq::RecurrencePair& pair, int digits = real::kDefaultDigits);

// first: eta1 = s_U / s_V^2. second: s_U / s_V (divided by V_m per member).
QuadraticSurd first_form_eta(const seq::RecurrencePair& pair);
QuadraticSurd second_form_eta_base(const seq::RecurrencePair& pair);

// For the second form a1_coefficient is required: A_1 = a1 * (1 + log D).
LinearFormStage build_stage(StageKind kind, const seq::RecurrencePair& pair,
                            const std::optional<Expr>& a1_coefficient = std::nullopt);

// 1.4 * 30^(l+3) * l^4.5 * d_L^2 * (1 + log d_L) * prod(a_value).
Expr matveev_coefficient(const LinearFormStage& stage);
// Power of (1 + log D) in the full bound: 1 + sum of log_power.
int matveev_log_power(const LinearFormStage& stage);
// -log|Lambda| < matveev_lower_bound(stage, D).
CReal matveev_lower_bound(const LinearFormStage& stage, const mpz_class& d_value,
                          int digits = real::kDefaultDigits);

// Result of bounding x in  linear_coeff * x - offset < C (1 + log(s x))^p.
struct StageBound {
  Expr coefficient;
  int power = 1;
  long s = 1;
  Expr linear_coeff;
  Expr offset;
  // Smallest N with failure at N and beyond; x < N for every solution.
  mpz_class resulting_bound;
  // difference L x - offset - C (1 + log s x)^p at N - 1 (< 0) and N (>= 0)
  CReal value_below;
  CReal value_at;
  // d/dx of the difference at N (> 0); the difference is convex there on.
  CReal slope_at;
  int iterations = 0;
};

StageBound solve_exponent_bound(const Expr& linear_coeff, const Expr& offset, const Expr& coefficient,
                                long s, int power,
                                const real::PrecisionPolicy& policy = real::PrecisionPolicy{});

// m log rho_V < coefficient * (1 + log(s n)), from the first form.
struct MBound {
  LinearFormStage stage;
  Expr matveev;       // coefficient of (1 + log(s n)) in the Matveev bound
  Expr coefficient;   // (matveev + max(0, log R_1)) / 2
  Expr height_offset; // h(eta_1 of the second form) <= m log rho_V + height_offset
  Expr a1_coefficient;
  long s = 4;
};

MBound stage1_m_bound(const seq::RecurrencePair& pair);

struct AbsoluteBound {
  MBound m_bound;
  LinearFormStage second;
  Expr matveev;  // coefficient of (1 + log(s n))^2
  StageBound n_bound;
};

AbsoluteBound absolute_bound(const seq::RecurrencePair& pair,
                             const real::PrecisionPolicy& policy = real::PrecisionPolicy{});

// Lambda evaluated directly for a concrete triple (m ignored by the first
// form's eta, used for V_m in the second).
Expr linear_form_value(const LinearFormStage& stage, const seq::RecurrencePair& pair, long k, long m,
                       long n);

}  // namespace dioph::lin
