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

// Certified real arithmetic.
//
// A CReal is a closed interval [lo, hi] with MPFR endpoints. Every operation
// rounds the lower endpoint toward -inf and the upper endpoint toward +inf, so
// the true value of the defining expression is always inside. Decisions made
// on intervals are three-valued; kUnknown means "refine and ask again".
//
// Expr is a small immutable expression tree over integers, rationals and the
// named constants. Anything that may need more digits later is carried as an
// Expr and re-evaluated by refine() or with_refinement().

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dioph/error.hpp"

namespace dioph::real {

inline constexpr int kDefaultDigits = 256;
inline constexpr int kDefaultCapDigits = 10000;
inline constexpr int kMinConstantDigits = 32;

// Binary precision used for a requested number of decimal digits, including
// guard bits.
mpfr_prec_t digits_to_bits(int digits);

enum class Tri { kFalse, kTrue, kUnknown };

constexpr Tri tri_not(Tri t) {
  return t == Tri::kTrue ? Tri::kFalse : t == Tri::kFalse ? Tri::kTrue : Tri::kUnknown;
}
constexpr Tri tri_and(Tri a, Tri b) {
  if (a == Tri::kFalse || b == Tri::kFalse) return Tri::kFalse;
  if (a == Tri::kTrue && b == Tri::kTrue) return Tri::kTrue;
  return Tri::kUnknown;
}
std::string_view to_string(Tri t);

namespace detail {

// Owning mpfr_t with value semantics.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(Mpfr other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }

  friend void swap(Mpfr& a, Mpfr& b) noexcept { mpfr_swap(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

}  // namespace detail

class CReal {
 public:
  // Exact zero at the default precision.
  CReal();

  static CReal from_int(long value, int digits = kDefaultDigits);
  static CReal from_mpz(const mpz_class& value, int digits = kDefaultDigits);
  static CReal from_mpq(const mpq_class& value, int digits = kDefaultDigits);
  // Interval [lo, hi] from exact rationals, rounded outward.
  static CReal from_bounds(const mpq_class& lo, const mpq_class& hi, int digits = kDefaultDigits);

  int digits() const { return digits_; }
  mpfr_prec_t bits() const { return lo_.bits(); }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  // Endpoints as exact rationals (MPFR values are dyadic).
  mpq_class lo_q() const;
  mpq_class hi_q() const;

  // Midpoint (round to nearest) and an upper bound for the half-width.
  double center_approx() const;
  std::string center_decimal(int significant_digits) const;
  std::string radius_decimal() const;
  // Upper bound of (hi - lo) / 2 as an exact rational.
  mpq_class radius_q() const;

  bool contains(const mpq_class& value) const;
  bool contains(const CReal& other) const;
  bool intersects(const CReal& other) const;
  bool is_exact() const;

  // Certified comparisons.
  Tri positive() const;
  Tri negative() const;
  Tri nonnegative() const;
  Tri excludes_zero() const;

  CReal operator-() const;

  friend CReal operator+(const CReal& a, const CReal& b);
  friend CReal operator-(const CReal& a, const CReal& b);
  friend CReal operator*(const CReal& a, const CReal& b);
  friend CReal operator/(const CReal& a, const CReal& b);

  friend CReal log(const CReal& x);
  friend CReal sqrt(const CReal& x);
  friend CReal abs(const CReal& x);
  friend CReal pow(const CReal& x, long exponent);
  friend CReal hull(const CReal& a, const CReal& b);
  friend CReal max(const CReal& a, const CReal& b);
  friend CReal nearest_int_distance(const CReal& x);

 private:
  CReal(detail::Mpfr lo, detail::Mpfr hi, int digits);
  static CReal uninitialized(mpfr_prec_t bits, int digits);

  detail::Mpfr lo_;
  detail::Mpfr hi_;
  int digits_;
};

CReal log(const CReal& x);
CReal sqrt(const CReal& x);
CReal abs(const CReal& x);
CReal pow(const CReal& x, long exponent);
CReal hull(const CReal& a, const CReal& b);
CReal max(const CReal& a, const CReal& b);

CReal operator+(const CReal& a, long b);
CReal operator-(const CReal& a, long b);
CReal operator*(const CReal& a, long b);
CReal operator/(const CReal& a, long b);
CReal operator-(long a, const CReal& b);

Tri less(const CReal& a, const CReal& b);
Tri less_equal(const CReal& a, const CReal& b);
inline Tri greater(const CReal& a, const CReal& b) { return less(b, a); }
inline Tri greater_equal(const CReal& a, const CReal& b) { return less_equal(b, a); }

// floor(lo) and ceil(hi): integer bounds that are never tighter than the
// information in the interval.
mpz_class floor_lo(const CReal& x);
mpz_class ceil_lo(const CReal& x);
mpz_class floor_hi(const CReal& x);
mpz_class ceil_hi(const CReal& x);

// ||x||, the distance to the nearest integer. Requires radius < 1/4; the
// result always lies inside [0, 1/2].
CReal nearest_int_distance(const CReal& x);

enum class Constant {
  kAlpha,     // (1 + sqrt5) / 2
  kBeta,      // (1 - sqrt5) / 2
  kGamma,     // 1 + sqrt2
  kDelta,     // 1 - sqrt2
  kSqrt2,
  kSqrt5,
  kLogAlpha,
  kLogGamma,
  kC1,        // log gamma / log alpha
  kC2,        // log alpha / log gamma
};

Constant parse_constant(std::string_view name);
std::string_view constant_name(Constant c);

// Certified enclosure of a named constant; radius <= 10^(2 - digits).
CReal make_constant(Constant c, int digits = kDefaultDigits);

struct PrecisionPolicy {
  int initial_digits = kDefaultDigits;
  int cap_digits = kDefaultCapDigits;

  // Defaults with the cap overridden by DIOPH_PRECISION_CAP when set.
  static PrecisionPolicy from_env();
};

class Expr {
 public:
  Expr();  // integer 0
  Expr(long value);  // NOLINT(google-explicit-constructor)
  static Expr integer(const mpz_class& value);
  static Expr rational(const mpq_class& value);
  static Expr constant(Constant c);

  CReal eval(int digits) const;
  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  friend Expr log(const Expr& x);
  friend Expr sqrt(const Expr& x);
  friend Expr abs(const Expr& x);
  friend Expr pow(const Expr& x, long exponent);
  friend Expr max(const Expr& a, const Expr& b);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr log(const Expr& x);
Expr sqrt(const Expr& x);
Expr abs(const Expr& x);
Expr pow(const Expr& x, long exponent);
Expr max(const Expr& a, const Expr& b);

// Evaluates expr, doubling the working precision until the radius is at most
// target_radius. Throws PrecisionError past the cap.
CReal refine(const Expr& expr, const mpq_class& target_radius,
             const PrecisionPolicy& policy = PrecisionPolicy{});

// Calls attempt(digits) with doubling precision until it returns a value.
// attempt returns std::nullopt when its decision is still undetermined.
template <class Attempt>
auto with_refinement(const PrecisionPolicy& policy, std::string_view what, Attempt&& attempt)
    -> typename decltype(attempt(0))::value_type {
  int digits = std::min(policy.initial_digits, policy.cap_digits);
  for (;;) {
    if (auto result = attempt(digits)) return *std::move(result);
    if (digits >= policy.cap_digits) break;
    digits = std::min(digits * 2, policy.cap_digits);
  }
  throw PrecisionError("undecided at precision cap (" + std::to_string(policy.cap_digits) +
                       " digits): " + std::string(what));
}

// Decides a three-valued predicate with refinement; throws past the cap.
template <class Predicate>
bool decide(const PrecisionPolicy& policy, std::string_view what, Predicate&& predicate) {
  return with_refinement(policy, what, [&](int digits) -> std::optional<bool> {
    Tri t = predicate(digits);
    if (t == Tri::kUnknown) return std::nullopt;
    return t == Tri::kTrue;
  });
}

}  // namespace dioph::real
