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

#include "dioph/sequences.hpp"

#include <algorithm>
#include <utility>

namespace dioph::seq {

using real::Tri;

RecurrenceSpec fibonacci_spec() { return {"fibonacci", 1, 1, 0, 1}; }
RecurrenceSpec pell_spec() { return {"pell", 2, 1, 0, 1}; }

long squarefree_part(long n) {
  if (n <= 0) throw ConfigError("squarefree_part of non-positive integer");
  long d = 1;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) d *= p;
  }
  return d * n;
}

namespace {

bool is_perfect_square(long n) {
  if (n < 0) return false;
  mpz_class z = n;
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

}  // namespace

BinaryRecurrence::BinaryRecurrence(RecurrenceSpec spec) : spec_(std::move(spec)) {
  const std::string who = "recurrence '" + spec_.name + "': ";
  if (spec_.b != 1 && spec_.b != -1) throw ConfigError(who + "b must be +1 or -1");
  if (spec_.a < 1) throw ConfigError(who + "a must be >= 1 (positive dominant root)");
  const long disc = discriminant();
  if (disc <= 0) throw ConfigError(who + "characteristic roots are not real and distinct");
  if (is_perfect_square(disc)) throw ConfigError(who + "characteristic roots are rational");
  if (spec_.u0 == 0 && spec_.u1 == 0) throw ConfigError(who + "zero sequence");

  const Expr sq = real::sqrt(Expr(disc));
  root_dom_ = (Expr(spec_.a) + sq) / Expr(2);
  root_sub_ = (Expr(spec_.a) - sq) / Expr(2);
  binet_scale_ = Expr(1) / sq;
}

mpz_class BinaryRecurrence::term(std::size_t n) const {
  if (n == 0) return spec_.u0;
  mpz_class prev = spec_.u0;
  mpz_class cur = spec_.u1;
  for (std::size_t i = 1; i < n; ++i) {
    mpz_class next = spec_.a * cur + spec_.b * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<mpz_class> BinaryRecurrence::terms(std::size_t count) const {
  std::vector<mpz_class> out;
  out.reserve(count);
  if (count > 0) out.push_back(spec_.u0);
  if (count > 1) out.push_back(spec_.u1);
  while (out.size() < count) {
    const std::size_t i = out.size();
    out.push_back(spec_.a * out[i - 1] + spec_.b * out[i - 2]);
  }
  return out;
}

Expr BinaryRecurrence::binet(long n) const {
  const Expr u0 = Expr::integer(spec_.u0);
  const Expr u1 = Expr::integer(spec_.u1);
  const Expr c_dom = (u1 - u0 * root_sub_) * binet_scale_;
  const Expr c_sub = (u0 * root_dom_ - u1) * binet_scale_;
  return c_dom * real::pow(root_dom_, n) + c_sub * real::pow(root_sub_, n);
}

RecurrencePair::RecurrencePair(std::string name, BinaryRecurrence u, BinaryRecurrence v,
                               int first_form_number)
    : name_(std::move(name)), u_(std::move(u)), v_(std::move(v)),
      first_form_number_(first_form_number) {
  if (u_.squarefree_discriminant() == v_.squarefree_discriminant()) {
    throw ConfigError("pair '" + name_ + "': both recurrences generate the quadratic field Q(sqrt(" +
                      std::to_string(u_.squarefree_discriminant()) + "))");
  }
}

RecurrencePair RecurrencePair::fpp() {
  return RecurrencePair("fpp", BinaryRecurrence::fibonacci(), BinaryRecurrence::pell(), 1);
}

RecurrencePair RecurrencePair::ffp() {
  return RecurrencePair("ffp", BinaryRecurrence::pell(), BinaryRecurrence::fibonacci(), 3);
}

Expr RecurrencePair::index_ratio() const {
  return real::log(v_.root_dom()) / real::log(u_.root_dom());
}

Expr RecurrencePair::index_ratio_inverse() const {
  return real::log(u_.root_dom()) / real::log(v_.root_dom());
}

GrowthReport check_growth_bounds(const BinaryRecurrence& rec, std::size_t n_max,
                                 const real::PrecisionPolicy& policy) {
  if (n_max < 1) throw ConfigError("check_growth_bounds: n_max must be >= 1");
  GrowthReport report;
  report.n_max = n_max;
  const std::vector<mpz_class> u = rec.terms(n_max + 1);

  auto check_range = [&](int digits) -> std::optional<std::vector<GrowthViolation>> {
    const CReal root = rec.root_dom().eval(digits);
    std::vector<GrowthViolation> violations;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const CReal value = CReal::from_mpz(u[n], digits);
      const long e = static_cast<long>(n);
      const Tri lower = real::less_equal(real::pow(root, e - 2), value);
      const Tri upper = real::less_equal(value, real::pow(root, e - 1));
      if (lower == Tri::kUnknown || upper == Tri::kUnknown) return std::nullopt;
      if (lower == Tri::kFalse) violations.push_back({n, true});
      if (upper == Tri::kFalse) violations.push_back({n, false});
    }
    return violations;
  };
  report.violations = real::with_refinement(policy, "growth bounds for " + rec.name(), check_range);
  return report;
}

long coarse_index_coefficient(const RecurrencePair& pair, int digits) {
  const CReal twice = pair.index_ratio().eval(digits) * 2;
  return std::max(3L, real::ceil_hi(twice).get_si());
}

KRange k_range(const RecurrencePair& pair, long m, long n, int digits) {
  if (m < 1 || n < m) throw ConfigError("k_range requires 1 <= m <= n");
  const CReal c = pair.index_ratio().eval(digits);
  const CReal lower = c * (m + n - 4) + 1;
  const CReal upper = c * (m + n - 2) + 2;
  KRange range;
  range.k_lo = std::max(1L, real::ceil_lo(lower).get_si());
  range.k_hi = real::floor_hi(upper).get_si();
  range.coarse_coefficient = coarse_index_coefficient(pair, digits);
  return range;
}

Expr eta1_height_bound_expr(const RecurrencePair& pair, long m) {
  if (m < 1) throw ConfigError("eta1_height_bound requires m >= 1");
  const mpz_class vm = pair.v().term(static_cast<std::size_t>(m));
  const Expr half_log_du = real::log(Expr(pair.u().discriminant())) / Expr(2);
  const Expr half_log_dv = real::log(Expr(pair.v().discriminant())) / Expr(2);
  return real::max(real::log(Expr::integer(vm)) + half_log_du, half_log_dv);
}

CReal eta1_height_bound(const RecurrencePair& pair, long m, int digits) {
  return eta1_height_bound_expr(pair, m).eval(digits);
}

}  // namespace dioph::seq
