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

// bound -> reduce -> search for U_k = V_m V_n, and the certificate it leaves.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/linforms.hpp"
#include "dioph/realcore.hpp"
#include "dioph/reduction.hpp"
#include "dioph/sequences.hpp"

namespace dioph::pipe {

using real::CReal;
using real::Expr;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr std::size_t kGrowthCheckLimit = 500;

struct PipelineConfig {
  std::string equation = "fpp";
  seq::RecurrenceSpec u;
  seq::RecurrenceSpec v;
  int first_form_number = 1;

  long k_max = 400;
  long n_max = 100;

  real::PrecisionPolicy precision;

  // M of the reduction lemma; must dominate every multiplier (k or m + n).
  mpz_class lemma_m{"30000000000000000000000000000000"};
  // nullopt: first convergent with q > 6M.
  std::optional<std::size_t> convergent_index = 74;
  // Reductions assume m >= m_guard (first form) and n >= n_guard (second).
  long m_guard = 20;
  long n_guard = 101;

  // If set, verify fails validation unless the found k-set equals it.
  std::optional<std::vector<long>> expect_k;
  bool timing = false;

  // Tag fpp/ffp with the matching Fibonacci/Pell specs.
  bool builtin() const;
};

// "fpp" (F_k = P_m P_n) or "ffp" (P_k = F_m F_n). Throws ConfigError otherwise.
PipelineConfig builtin_config(const std::string& equation);

// DIOPH_PRECISION_CAP, when set, overrides the configured cap.
void apply_precision_env(PipelineConfig& config);

// Reads a config tree (or a certificate, using its "config" member). Keys
// left out take the built-in defaults of the named equation.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& text);

// Validates the pair against the structural conditions (ConfigError).
seq::RecurrencePair make_pair(const PipelineConfig& config);

struct SolutionTriple {
  std::string equation;
  long k = 0;
  long m = 0;
  long n = 0;
  mpz_class value;

  friend bool operator==(const SolutionTriple&, const SolutionTriple&) = default;
};

// All 1 <= k <= k_max, 1 <= m <= n <= n_max with U_k = V_m V_n, sorted by
// (k, m, n). Uses a sorted product table.
std::vector<SolutionTriple> search(const seq::RecurrencePair& pair, long k_max, long n_max);
std::vector<long> k_set(const std::vector<SolutionTriple>& solutions);

struct FormReduction {
  red::ReductionInstance positive;
  red::ReductionOutcome positive_outcome;
  red::ReductionOutcome negative_outcome;
  mpz_class reduced;    // max over both signs
  mpz_class effective;  // max(reduced, guard - 1)
};

struct FamilyReduction {
  red::ReductionInstance positive;
  long m_max = 0;
  red::FamilyOutcome positive_outcome;
  red::FamilyOutcome negative_outcome;
  mpz_class reduced;
  mpz_class effective;
};

struct GuardCheck {
  std::string stage;
  long guard = 0;
  CReal lambda_bound;  // R B^-guard, must be < 1/4
};

struct Certificate {
  PipelineConfig config;
  std::string pair_name;
  std::vector<std::string> assumptions;

  // stage 1
  lin::AbsoluteBound absolute;
  CReal index_ratio;
  seq::GrowthReport growth_u;
  seq::GrowthReport growth_v;
  std::vector<GuardCheck> guards;

  // stage 2
  red::ConvergentTable table;
  FormReduction first;
  FamilyReduction second;

  // stage 3
  long k_required = 0;
  long n_required = 0;
  std::vector<SolutionTriple> solutions;
  std::vector<long> ks;
  bool k_range_consistent = true;
  bool matches_expectation = true;

  std::optional<double> seconds;
};

// Full stage 1 + 2 + 3 run. Throws ConfigError for invalid pairs and
// PrecisionError for undecided comparisons or exceeded budgets. A k-set that
// contradicts expect_k is reported through matches_expectation.
Certificate verify_theorem(const PipelineConfig& config);

std::string render_certificate(const Certificate& cert);
std::string render_config(const PipelineConfig& config);
std::string render_bounds(const seq::RecurrencePair& pair, const lin::AbsoluteBound& bound, int digits);
std::string render_solutions(const std::vector<SolutionTriple>& solutions);
std::string render_reduction(const std::vector<red::ReductionOutcome>& outcomes,
                             const red::ReductionInstance& instance);

}  // namespace dioph::pipe
