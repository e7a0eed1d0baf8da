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

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "dioph/realcore.hpp"

namespace dioph::seq {

using real::CReal;
using real::Expr;

// u_{n+2} = a u_{n+1} + b u_n with u_0, u_1 given.
struct RecurrenceSpec {
  std::string name;
  long a = 1;
  long b = 1;
  mpz_class u0 = 0;
  mpz_class u1 = 1;
};

RecurrenceSpec fibonacci_spec();
RecurrenceSpec pell_spec();

// Smallest d with n = f^2 d; n > 0.
long squarefree_part(long n);

// Immutable, validated binary recurrence with real irrational characteristic
// roots, |root_dom| > 1 > |root_sub| and root_dom * root_sub = -b = +-1.
class BinaryRecurrence {
 public:
  // Throws ConfigError if b != +-1, the discriminant a^2 + 4b is not a
  // positive non-square, a < 1, or u0 = u1 = 0.
  explicit BinaryRecurrence(RecurrenceSpec spec);

  static BinaryRecurrence fibonacci() { return BinaryRecurrence(fibonacci_spec()); }
  static BinaryRecurrence pell() { return BinaryRecurrence(pell_spec()); }

  const RecurrenceSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  long a() const { return spec_.a; }
  long b() const { return spec_.b; }

  long discriminant() const { return spec_.a * spec_.a + 4 * spec_.b; }
  long squarefree_discriminant() const { return squarefree_part(discriminant()); }

  // u0 = 0, u1 = 1: u_n = (root_dom^n - root_sub^n) / (root_dom - root_sub).
  bool is_lucas_normalized() const { return spec_.u0 == 0 && spec_.u1 == 1; }

  mpz_class term(std::size_t n) const;
  // u_0 .. u_{count-1}
  std::vector<mpz_class> terms(std::size_t count) const;

  const Expr& root_dom() const { return root_dom_; }
  const Expr& root_sub() const { return root_sub_; }
  // 1 / (root_dom - root_sub) = 1 / sqrt(discriminant)
  const Expr& binet_scale() const { return binet_scale_; }

  // Binet expression for u_n valid for arbitrary initial terms.
  Expr binet(long n) const;

 private:
  RecurrenceSpec spec_;
  Expr root_dom_;
  Expr root_sub_;
  Expr binet_scale_;
};

// The pair (U, V) of the equation U_k = V_m V_n.
class RecurrencePair {
 public:
  // Throws ConfigError when both discriminants have the same squarefree part.
  RecurrencePair(std::string name, BinaryRecurrence u, BinaryRecurrence v, int first_form_number = 1);

  static RecurrencePair fpp();  // F_k = P_m P_n
  static RecurrencePair ffp();  // P_k = F_m F_n

  const std::string& name() const { return name_; }
  const BinaryRecurrence& u() const { return u_; }
  const BinaryRecurrence& v() const { return v_; }
  // Numbering of the two linear forms in reports (1 -> Lambda_1/Lambda_2).
  int first_form_number() const { return first_form_number_; }

  // log root_V / log root_U, the slope relating k to m + n.
  Expr index_ratio() const;
  Expr index_ratio_inverse() const;

 private:
  std::string name_;
  BinaryRecurrence u_;
  BinaryRecurrence v_;
  int first_form_number_;
};

struct GrowthViolation {
  std::size_t n;
  bool lower;  // root^(n-2) <= u_n failed (else the upper bound)
};

struct GrowthReport {
  std::size_t n_max = 0;
  std::vector<GrowthViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Certifies root_dom^(n-2) <= u_n <= root_dom^(n-1) for 1 <= n <= n_max.
GrowthReport check_growth_bounds(const BinaryRecurrence& rec, std::size_t n_max,
                                 const real::PrecisionPolicy& policy = real::PrecisionPolicy{});

struct KRange {
  long k_lo = 1;
  long k_hi = 0;
  // s with k <= s * n for every admissible triple; s >= 3 so s * n >= 3.
  long coarse_coefficient = 0;
};

// Integer bracket of k forced by the growth bounds:
// 1 + c (m + n - 4) <= k <= 2 + c (m + n - 2), c = log root_V / log root_U.
KRange k_range(const RecurrencePair& pair, long m, long n, int digits = real::kDefaultDigits);

// max(3, ceil(2c)); see KRange::coarse_coefficient.
long coarse_index_coefficient(const RecurrencePair& pair, int digits = real::kDefaultDigits);

// Upper bound for h(eta) where eta = s_U / (s_V V_m) is the leading number of
// the second linear form: max(log V_m + log sqrt(Delta_U), log sqrt(Delta_V)).
Expr eta1_height_bound_expr(const RecurrencePair& pair, long m);
CReal eta1_height_bound(const RecurrencePair& pair, long m, int digits = real::kDefaultDigits);

}  // namespace dioph::seq
