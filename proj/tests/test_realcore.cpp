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

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "dioph/realcore.hpp"

namespace {

using dioph::real::Constant;
using dioph::real::CReal;
using dioph::real::Expr;
using dioph::real::Tri;
namespace real = dioph::real;

mpq_class q(long num, long den = 1) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

TEST(CRealTest, ExactIntegerArithmetic) {
  const CReal three = CReal::from_int(1) + CReal::from_int(2);
  EXPECT_TRUE(three.is_exact());
  EXPECT_TRUE(three.contains(q(3)));
  const CReal x = real::make_constant(Constant::kSqrt2);
  const CReal zero = x * CReal::from_int(0);
  EXPECT_TRUE(zero.is_exact());
  EXPECT_TRUE(zero.contains(q(0)));
}

TEST(CRealTest, DomainErrors) {
  const CReal around_zero = CReal::from_bounds(q(-1, 10), q(1, 10));
  EXPECT_THROW(CReal::from_int(1) / around_zero, dioph::DomainError);
  EXPECT_THROW(real::log(around_zero), dioph::DomainError);
  EXPECT_THROW(real::log(CReal::from_int(0)), dioph::DomainError);
  EXPECT_THROW(real::sqrt(CReal::from_int(-2)), dioph::DomainError);
}

TEST(CRealTest, UnknownConstantIsConfigError) {
  EXPECT_THROW(real::parse_constant("zeta3"), dioph::ConfigError);
  EXPECT_EQ(real::parse_constant("log_gamma"), Constant::kLogGamma);
  EXPECT_THROW(real::make_constant(Constant::kAlpha, 31), dioph::ConfigError);
}

TEST(CRealTest, ConstantRadiusMatchesRequest) {
  for (Constant c : {Constant::kAlpha, Constant::kBeta, Constant::kGamma, Constant::kDelta, Constant::kSqrt2,
                     Constant::kSqrt5, Constant::kLogAlpha, Constant::kLogGamma, Constant::kC1, Constant::kC2}) {
    for (int digits : {32, 50, 256}) {
      const CReal x = real::make_constant(c, digits);
      mpq_class limit = 1;
      for (int i = 0; i < digits - 2; ++i) limit /= 10;
      EXPECT_LE(x.radius_q(), limit) << real::constant_name(c) << " at " << digits;
    }
  }
}

TEST(CRealTest, IndexRatiosContainPrintedDigits) {
  // every point of the interval starts with the printed digits
  const CReal c1 = real::make_constant(Constant::kC1, 50);
  EXPECT_TRUE(CReal::from_bounds(q(183157, 100000), q(183158, 100000)).contains(c1));
  const CReal c2 = real::make_constant(Constant::kC2, 50);
  EXPECT_TRUE(CReal::from_bounds(q(545979, 1000000), q(545980, 1000000)).contains(c2));
}

TEST(CRealTest, AlphaByIntervalNewton) {
  const CReal x = real::make_constant(Constant::kAlpha, 50);
  // f(X) = X^2 - X - 1 contains 0 and the Newton step N(X) lands inside X
  const CReal f = x * x - x - CReal::from_int(1, 50);
  EXPECT_TRUE(f.contains(q(0)));
  const CReal mid = CReal::from_mpq(x.lo_q(), 60);
  const CReal fm = mid * mid - mid - CReal::from_int(1, 60);
  const CReal newton = mid - fm / (x * 2 - 1);
  EXPECT_TRUE(newton.intersects(x));
  EXPECT_EQ(real::greater(x, CReal::from_int(1)), Tri::kTrue);
}

TEST(CRealTest, LogOfAlphaAgreesWithNamedConstant) {
  const CReal via_log = real::log(real::make_constant(Constant::kAlpha, 80));
  const CReal named = real::make_constant(Constant::kLogAlpha, 80);
  EXPECT_TRUE(via_log.intersects(named));
  EXPECT_TRUE(real::log(real::make_constant(Constant::kGamma, 80))
                  .intersects(real::make_constant(Constant::kLogGamma, 80)));
}

TEST(NearestIntTest, Examples) {
  EXPECT_TRUE(real::nearest_int_distance(CReal::from_mpq(q(16, 5))).contains(q(1, 5)));
  EXPECT_TRUE(real::nearest_int_distance(CReal::from_mpq(q(1, 2))).contains(q(1, 2)));
  const mpq_class c = q(74999, 10000);
  const mpq_class r = q(1, 10000000000L);
  const CReal d = real::nearest_int_distance(CReal::from_bounds(c - r, c + r));
  EXPECT_TRUE(d.contains(q(4999, 10000)));
  EXPECT_LE(d.radius_q(), r * 2);
  EXPECT_THROW(real::nearest_int_distance(CReal::from_bounds(q(0), q(1, 2))), dioph::PrecisionError);
}

TEST(NearestIntTest, RangeAndIntegerShifts) {
  std::mt19937_64 rng(20261014);
  const CReal x = real::make_constant(Constant::kC2, 128);
  const CReal base = real::nearest_int_distance(x);
  for (int trial = 0; trial < 200; ++trial) {
    mpz_class shift = 0;
    const int len = 1 + static_cast<int>(rng() % 36);
    for (int i = 0; i < len; ++i) shift = shift * 10 + static_cast<long>(rng() % 10);
    if (rng() % 2) shift = -shift;
    const CReal d = real::nearest_int_distance(x + CReal::from_mpz(shift, 128));
    EXPECT_TRUE(d.intersects(base));
    EXPECT_NE(real::less(d, CReal::from_int(0)), Tri::kTrue);
    EXPECT_NE(real::greater(d, CReal::from_mpq(q(1, 2))), Tri::kTrue);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const mpq_class v(static_cast<long>(rng() % 2000001) - 1000000, 1 + static_cast<long>(rng() % 997));
    const CReal d = real::nearest_int_distance(CReal::from_mpq(v));
    EXPECT_TRUE(CReal::from_bounds(q(0), q(1, 2)).contains(d));
  }
}

// Random rational expression with its exact value.
struct Tree {
  Expr expr;
  mpq_class value;
};

Tree random_tree(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 4 == 0) {
    const mpq_class v = q(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 97));
    return {Expr::rational(v), v};
  }
  Tree a = random_tree(rng, depth - 1);
  switch (rng() % 7) {
    case 0: {
      Tree b = random_tree(rng, depth - 1);
      return {a.expr + b.expr, a.value + b.value};
    }
    case 1: {
      Tree b = random_tree(rng, depth - 1);
      return {a.expr - b.expr, a.value - b.value};
    }
    case 2: {
      Tree b = random_tree(rng, depth - 1);
      return {a.expr * b.expr, a.value * b.value};
    }
    case 3: {
      Tree b = random_tree(rng, depth - 1);
      if (b.value == 0) return a;
      return {a.expr / b.expr, a.value / b.value};
    }
    case 4:
      return {-a.expr, -a.value};
    case 5:
      return {real::abs(a.expr), abs(a.value)};
    default: {
      Tree b = random_tree(rng, depth - 1);
      return {real::max(a.expr, b.expr), a.value > b.value ? a.value : b.value};
    }
  }
}

TEST(ExprTest, ContainmentOverRandomRationalTrees) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Tree t = random_tree(rng, 5);
    for (int digits : {32, 80}) {
      CReal v;
      try {
        v = t.expr.eval(digits);
      } catch (const dioph::DomainError&) {
        // a divisor whose interval straddles zero at this precision
        continue;
      }
      EXPECT_TRUE(v.contains(t.value)) << t.expr.to_string() << " at " << digits;
    }
  }
}

TEST(ExprTest, PowerAndSqrt) {
  const Expr two(2);
  EXPECT_TRUE(real::pow(two, 10).eval(40).contains(q(1024)));
  EXPECT_TRUE(real::pow(two, -3).eval(40).contains(q(1, 8)));
  EXPECT_TRUE(real::pow(Expr(-3), 3).eval(40).contains(q(-27)));
  EXPECT_TRUE(real::sqrt(Expr(49)).eval(40).contains(q(7)));
  const CReal s = real::sqrt(Expr(2)).eval(64);
  EXPECT_TRUE((s * s).contains(q(2)));
}

TEST(RefineTest, RadiusShrinksAndIntersectsCoarse) {
  const Expr e = real::log(Expr::constant(Constant::kGamma)) / real::log(Expr::constant(Constant::kAlpha));
  const CReal coarse = e.eval(32);
  mpq_class target = 1;
  for (int i = 0; i < 300; ++i) target /= 10;
  const CReal fine = real::refine(e, target);
  EXPECT_LE(fine.radius_q(), target);
  EXPECT_TRUE(fine.intersects(coarse));
  EXPECT_LE(e.eval(512).radius_q(), e.eval(256).radius_q());
}

TEST(RefineTest, CapIsHardFailure) {
  real::PrecisionPolicy tight{32, 64};
  mpq_class target = 1;
  for (int i = 0; i < 500; ++i) target /= 10;
  EXPECT_THROW(real::refine(Expr::constant(Constant::kSqrt5), target, tight), dioph::PrecisionError);
  // sqrt(2) against sqrt(8) / 2 is never decided
  const Expr a = real::sqrt(Expr(2));
  const Expr b = real::sqrt(Expr(8)) / Expr(2);
  EXPECT_THROW(real::decide(tight, "equal reals", [&](int d) { return real::less(a.eval(d), b.eval(d)); }),
               dioph::PrecisionError);
}

TEST(PolicyTest, CapFromEnvironment) {
  ::setenv("DIOPH_PRECISION_CAP", "512", 1);
  EXPECT_EQ(real::PrecisionPolicy::from_env().cap_digits, 512);
  ::setenv("DIOPH_PRECISION_CAP", "lots", 1);
  EXPECT_THROW(real::PrecisionPolicy::from_env(), dioph::ConfigError);
  ::unsetenv("DIOPH_PRECISION_CAP");
  EXPECT_EQ(real::PrecisionPolicy::from_env().cap_digits, real::kDefaultCapDigits);
}

}  // namespace
