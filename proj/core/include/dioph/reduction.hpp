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

// Dujella-Petho reduction.
//
// Given 0 < x tau - y + mu < A B^-k with x <= M, a convergent denominator
// q > 6M of tau and eps = ||mu q|| - M ||tau q|| > 0, every solution has
// k < log(A q / eps) / log B.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/linforms.hpp"
#include "dioph/realcore.hpp"
#include "dioph/sequences.hpp"

namespace dioph::red {

using real::CReal;
using real::Expr;

struct Convergent {
  mpz_class p;
  mpz_class q;
};

// Certified continued fraction prefix of an irrational x. Every quotient is
// shared by the exact expansions of both interval endpoints.
struct ConvergentTable {
  Expr x;
  CReal value;
  int digits = 0;
  std::vector<mpz_class> quotients;
  std::vector<Convergent> convergents;

  std::size_t size() const { return convergents.size(); }
};

// Extends until some q_i > min_q and at least min_terms quotients exist, then
// truncates to exactly that length so the table does not depend on the
// precision that produced it.
ConvergentTable expand(const Expr& x, const mpz_class& min_q, std::size_t min_terms = 0,
                       const real::PrecisionPolicy& policy = real::PrecisionPolicy{});

// p_i q_{i-1} - p_{i-1} q_i = +-1, q increasing, |x - p_i/q_i| < 1/q_i^2.
bool verify_table(const ConvergentTable& table);

// ||mu q|| - M ||tau q||
CReal dp_epsilon(const mpz_class& q, const CReal& tau, const CReal& mu, const mpz_class& m_bound);

struct ReductionInstance {
  std::string label;
  Expr tau;
  Expr mu;
  Expr a;
  Expr b;
  mpz_class m_bound;
};

struct ReductionOutcome {
  std::string label;
  std::size_t convergent_index = 0;
  mpz_class p;
  mpz_class q;
  bool q_exceeds_6m = false;
  CReal epsilon;
  // log(A q / eps) / log B and the integer consequence: k <= exponent_bound.
  // Every solution has k < raw_bound, so floor of its upper end is sound.
  CReal raw_bound;
  mpz_class exponent_bound;
  // Indices at or past the start where eps was certified <= 0.
  std::vector<std::size_t> skipped;
};

struct ReducePolicy {
  // Start at this convergent instead of the first with q > 6M (the rule
  // "q > 6M" is still enforced).
  std::optional<std::size_t> start_index;
  // Move to the next convergent while eps <= 0; otherwise fail at the start.
  bool advance = true;
  real::PrecisionPolicy precision;
};

ReductionOutcome dp_reduce(const ReductionInstance& inst, const ConvergentTable& table,
                           const ReducePolicy& policy = ReducePolicy{});

struct FamilyMember {
  long m = 0;
  Expr mu;
};

struct FamilyOutcome {
  std::vector<ReductionOutcome> members;
  CReal min_epsilon;
  long min_epsilon_m = 0;
  mpz_class max_bound;
  long max_bound_m = 0;
};

// dp_reduce for every member (shared tau, A, B, M), all at the same start
// convergent: a member with eps <= 0 there is a PrecisionError naming m.
FamilyOutcome reduce_family(const ReductionInstance& base, const std::vector<FamilyMember>& members,
                            const ConvergentTable& table, const ReducePolicy& policy = ReducePolicy{});

enum class Sign { kPositive, kNegative };
std::string_view to_string(Sign s);

// Tau shared by every instance of a pair: log(smaller root) / log(larger).
Expr pair_tau(const seq::RecurrencePair& pair, int digits = real::kDefaultDigits);

// Turns |Lambda| < R B^-v (with |Lambda| < 1/4) into the lemma's
// 0 < x tau - y + mu < A B^-v using |Gamma| < 2 |Lambda| and division by the
// log of the larger root. A = ceil(2R / log(larger root)). For the second
// form eta_1 depends on m, so m must be given.
ReductionInstance gamma_to_lemma_form(const lin::LinearFormStage& stage, const seq::RecurrencePair& pair,
                                      Sign sign, const mpz_class& m_bound,
                                      std::optional<long> m = std::nullopt,
                                      int digits = real::kDefaultDigits);

// One member per m = 1..m_max of the second form.
std::vector<FamilyMember> family_members(const lin::LinearFormStage& stage, const seq::RecurrencePair& pair,
                                         Sign sign, long m_max, int digits = real::kDefaultDigits);

}  // namespace dioph::red
