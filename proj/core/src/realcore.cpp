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

#include "dioph/realcore.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace dioph::real {

namespace {

constexpr mpfr_prec_t kGuardBits = 64;

std::string take_mpfr_string(char* raw) {
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  // log2(10) < 3.3220
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3220)) + kGuardBits;
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::kTrue: return "true";
    case Tri::kFalse: return "false";
    case Tri::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace detail {

Mpfr::Mpfr(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);  // same precision, exact
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(Mpfr other) noexcept {
  swap(*this, other);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

}  // namespace detail

using detail::Mpfr;

CReal::CReal() : CReal(Mpfr(digits_to_bits(kDefaultDigits)), Mpfr(digits_to_bits(kDefaultDigits)),
                       kDefaultDigits) {}

CReal::CReal(Mpfr lo, Mpfr hi, int digits)
    : lo_(std::move(lo)), hi_(std::move(hi)), digits_(digits) {}

CReal CReal::uninitialized(mpfr_prec_t bits, int digits) {
  return CReal(Mpfr(bits), Mpfr(bits), digits);
}

CReal CReal::from_int(long value, int digits) {
  CReal out = uninitialized(digits_to_bits(digits), digits);
  mpfr_set_si(out.lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(out.hi_.get(), value, MPFR_RNDU);
  return out;
}

CReal CReal::from_mpz(const mpz_class& value, int digits) {
  CReal out = uninitialized(digits_to_bits(digits), digits);
  mpfr_set_z(out.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
  return out;
}

CReal CReal::from_mpq(const mpq_class& value, int digits) {
  return from_bounds(value, value, digits);
}

CReal CReal::from_bounds(const mpq_class& lo, const mpq_class& hi, int digits) {
  if (lo > hi) throw DomainError("from_bounds: lo > hi");
  CReal out = uninitialized(digits_to_bits(digits), digits);
  mpfr_set_q(out.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

mpq_class CReal::lo_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_.get());
  return q;
}

mpq_class CReal::hi_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_.get());
  return q;
}

double CReal::center_approx() const {
  return 0.5 * (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN));
}

std::string CReal::center_decimal(int significant_digits) const {
  Mpfr mid(bits() + 1);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);  // exact with one extra bit
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", significant_digits, mid.get());
  return take_mpfr_string(raw);
}

std::string CReal::radius_decimal() const {
  Mpfr r(bits());
  mpfr_sub(r.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDU);
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.3RUe", r.get());
  return take_mpfr_string(raw);
}

mpq_class CReal::radius_q() const { return (hi_q() - lo_q()) / 2; }

bool CReal::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_.get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), value.get_mpq_t()) >= 0;
}

bool CReal::contains(const CReal& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo()) && mpfr_greaterequal_p(hi_.get(), other.hi());
}

bool CReal::intersects(const CReal& other) const {
  return mpfr_lessequal_p(lo_.get(), other.hi()) && mpfr_lessequal_p(other.lo(), hi_.get());
}

bool CReal::is_exact() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

Tri CReal::positive() const {
  if (mpfr_sgn(lo_.get()) > 0) return Tri::kTrue;
  if (mpfr_sgn(hi_.get()) <= 0) return Tri::kFalse;
  return Tri::kUnknown;
}

Tri CReal::negative() const { return (-*this).positive(); }

Tri CReal::nonnegative() const { return tri_not(negative()); }

Tri CReal::excludes_zero() const {
  if (mpfr_sgn(lo_.get()) > 0 || mpfr_sgn(hi_.get()) < 0) return Tri::kTrue;
  if (mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get())) return Tri::kFalse;
  return Tri::kUnknown;
}

CReal CReal::operator-() const {
  CReal out = uninitialized(bits(), digits_);
  mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

namespace {

mpfr_prec_t joint_bits(const CReal& a, const CReal& b) { return std::max(a.bits(), b.bits()); }
int joint_digits(const CReal& a, const CReal& b) { return std::max(a.digits(), b.digits()); }

}  // namespace

CReal operator+(const CReal& a, const CReal& b) {
  CReal out = CReal::uninitialized(joint_bits(a, b), joint_digits(a, b));
  mpfr_add(out.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(out.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
  return out;
}

CReal operator-(const CReal& a, const CReal& b) {
  CReal out = CReal::uninitialized(joint_bits(a, b), joint_digits(a, b));
  mpfr_sub(out.lo_.get(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(out.hi_.get(), a.hi(), b.lo(), MPFR_RNDU);
  return out;
}

CReal operator*(const CReal& a, const CReal& b) {
  const mpfr_prec_t bits = joint_bits(a, b);
  CReal out = CReal::uninitialized(bits, joint_digits(a, b));
  Mpfr t(bits);
  mpfr_srcptr xs[2] = {a.lo(), a.hi()};
  mpfr_srcptr ys[2] = {b.lo(), b.hi()};
  bool first = true;
  for (mpfr_srcptr x : xs) {
    for (mpfr_srcptr y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), out.lo_.get())) mpfr_set(out.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), out.hi_.get())) mpfr_set(out.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

CReal operator/(const CReal& a, const CReal& b) {
  if (b.excludes_zero() != Tri::kTrue) throw DomainError("division by an interval containing 0");
  const mpfr_prec_t bits = joint_bits(a, b);
  CReal out = CReal::uninitialized(bits, joint_digits(a, b));
  Mpfr t(bits);
  mpfr_srcptr xs[2] = {a.lo(), a.hi()};
  mpfr_srcptr ys[2] = {b.lo(), b.hi()};
  bool first = true;
  for (mpfr_srcptr x : xs) {
    for (mpfr_srcptr y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), out.lo_.get())) mpfr_set(out.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), out.hi_.get())) mpfr_set(out.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

CReal operator+(const CReal& a, long b) { return a + CReal::from_int(b, a.digits()); }
CReal operator-(const CReal& a, long b) { return a - CReal::from_int(b, a.digits()); }
CReal operator*(const CReal& a, long b) { return a * CReal::from_int(b, a.digits()); }
CReal operator/(const CReal& a, long b) { return a / CReal::from_int(b, a.digits()); }
CReal operator-(long a, const CReal& b) { return CReal::from_int(a, b.digits()) - b; }

CReal log(const CReal& x) {
  if (x.positive() != Tri::kTrue) throw DomainError("log of an interval that is not strictly positive");
  CReal out = CReal::uninitialized(x.bits(), x.digits());
  mpfr_log(out.lo_.get(), x.lo(), MPFR_RNDD);
  mpfr_log(out.hi_.get(), x.hi(), MPFR_RNDU);
  return out;
}

CReal sqrt(const CReal& x) {
  if (mpfr_sgn(x.lo()) < 0) throw DomainError("sqrt of an interval with negative part");
  CReal out = CReal::uninitialized(x.bits(), x.digits());
  mpfr_sqrt(out.lo_.get(), x.lo(), MPFR_RNDD);
  mpfr_sqrt(out.hi_.get(), x.hi(), MPFR_RNDU);
  return out;
}

CReal abs(const CReal& x) {
  if (mpfr_sgn(x.lo()) >= 0) return x;
  if (mpfr_sgn(x.hi()) <= 0) return -x;
  CReal out = CReal::uninitialized(x.bits(), x.digits());
  mpfr_set_zero(out.lo_.get(), 1);
  mpfr_neg(out.hi_.get(), x.lo(), MPFR_RNDU);
  if (mpfr_greater_p(x.hi(), out.hi_.get())) mpfr_set(out.hi_.get(), x.hi(), MPFR_RNDU);
  return out;
}

CReal pow(const CReal& x, long exponent) {
  if (exponent == 0) return CReal::from_int(1, x.digits());
  if (exponent < 0) return CReal::from_int(1, x.digits()) / pow(x, -exponent);
  const auto e = static_cast<unsigned long>(exponent);
  CReal out = CReal::uninitialized(x.bits(), x.digits());
  if (e % 2 == 1 || mpfr_sgn(x.lo()) >= 0) {
    // monotone increasing on the whole interval
    mpfr_pow_ui(out.lo_.get(), x.lo(), e, MPFR_RNDD);
    mpfr_pow_ui(out.hi_.get(), x.hi(), e, MPFR_RNDU);
  } else if (mpfr_sgn(x.hi()) <= 0) {
    mpfr_pow_ui(out.lo_.get(), x.hi(), e, MPFR_RNDD);
    mpfr_pow_ui(out.hi_.get(), x.lo(), e, MPFR_RNDU);
  } else {
    CReal m = abs(x);
    mpfr_set_zero(out.lo_.get(), 1);
    mpfr_pow_ui(out.hi_.get(), m.hi(), e, MPFR_RNDU);
  }
  return out;
}

CReal hull(const CReal& a, const CReal& b) {
  CReal out = CReal::uninitialized(joint_bits(a, b), joint_digits(a, b));
  mpfr_min(out.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(out.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
  return out;
}

CReal max(const CReal& a, const CReal& b) {
  CReal out = CReal::uninitialized(joint_bits(a, b), joint_digits(a, b));
  mpfr_max(out.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(out.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
  return out;
}

Tri less(const CReal& a, const CReal& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Tri::kTrue;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return Tri::kFalse;
  return Tri::kUnknown;
}

Tri less_equal(const CReal& a, const CReal& b) {
  if (mpfr_lessequal_p(a.hi(), b.lo())) return Tri::kTrue;
  if (mpfr_greater_p(a.lo(), b.hi())) return Tri::kFalse;
  return Tri::kUnknown;
}

namespace {

mpz_class to_integer(mpfr_srcptr x, mpfr_rnd_t rnd) {
  if (!mpfr_number_p(x)) throw DomainError("non-finite interval endpoint");
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x, rnd);
  return z;
}

}  // namespace

mpz_class floor_lo(const CReal& x) { return to_integer(x.lo(), MPFR_RNDD); }
mpz_class ceil_lo(const CReal& x) { return to_integer(x.lo(), MPFR_RNDU); }
mpz_class floor_hi(const CReal& x) { return to_integer(x.hi(), MPFR_RNDD); }
mpz_class ceil_hi(const CReal& x) { return to_integer(x.hi(), MPFR_RNDU); }

CReal nearest_int_distance(const CReal& x) {
  if (x.radius_q() >= mpq_class(1, 4)) {
    throw PrecisionError("nearest_int_distance: interval too wide (radius >= 1/4)");
  }
  Mpfr mid(x.bits() + 1);
  mpfr_add(mid.get(), x.lo(), x.hi(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  const mpz_class nearest = to_integer(mid.get(), MPFR_RNDN);

  // |x - n| lies in [0, 3/4]; ||x|| = min(t, 1 - t) there.
  const CReal dist = abs(x - CReal::from_mpz(nearest, x.digits()));
  const CReal one = CReal::from_int(1, x.digits());
  auto h = [&](mpfr_srcptr t) {
    CReal point = CReal::uninitialized(x.bits(), x.digits());
    mpfr_set(point.lo_.get(), t, MPFR_RNDD);
    mpfr_set(point.hi_.get(), t, MPFR_RNDU);
    CReal other = one - point;
    CReal out = CReal::uninitialized(x.bits(), x.digits());
    mpfr_min(out.lo_.get(), point.lo(), other.lo(), MPFR_RNDD);
    mpfr_min(out.hi_.get(), point.hi(), other.hi(), MPFR_RNDU);
    return out;
  };
  CReal result = hull(h(dist.lo()), h(dist.hi()));
  const bool straddles_half = mpfr_cmp_d(dist.lo(), 0.5) <= 0 && mpfr_cmp_d(dist.hi(), 0.5) >= 0;
  if (straddles_half) mpfr_set_d(result.hi_.get(), 0.5, MPFR_RNDU);
  if (mpfr_sgn(result.lo()) < 0) mpfr_set_zero(result.lo_.get(), 1);
  if (mpfr_cmp_d(result.hi(), 0.5) > 0) mpfr_set_d(result.hi_.get(), 0.5, MPFR_RNDU);
  return result;
}

Constant parse_constant(std::string_view name) {
  static constexpr std::pair<std::string_view, Constant> kNames[] = {
      {"alpha", Constant::kAlpha},         {"beta", Constant::kBeta},
      {"gamma", Constant::kGamma},         {"delta", Constant::kDelta},
      {"sqrt2", Constant::kSqrt2},         {"sqrt5", Constant::kSqrt5},
      {"log_alpha", Constant::kLogAlpha},  {"log_gamma", Constant::kLogGamma},
      {"c1", Constant::kC1},               {"c2", Constant::kC2},
  };
  for (const auto& [key, value] : kNames) {
    if (key == name) return value;
  }
  throw ConfigError("unknown constant id: " + std::string(name));
}

std::string_view constant_name(Constant c) {
  switch (c) {
    case Constant::kAlpha: return "alpha";
    case Constant::kBeta: return "beta";
    case Constant::kGamma: return "gamma";
    case Constant::kDelta: return "delta";
    case Constant::kSqrt2: return "sqrt2";
    case Constant::kSqrt5: return "sqrt5";
    case Constant::kLogAlpha: return "log_alpha";
    case Constant::kLogGamma: return "log_gamma";
    case Constant::kC1: return "c1";
    case Constant::kC2: return "c2";
  }
  return "?";
}

CReal make_constant(Constant c, int digits) {
  if (digits < kMinConstantDigits) {
    throw ConfigError("make_constant: precision below " + std::to_string(kMinConstantDigits) +
                      " digits");
  }
  const CReal one = CReal::from_int(1, digits);
  const CReal sqrt2 = sqrt(CReal::from_int(2, digits));
  const CReal sqrt5 = sqrt(CReal::from_int(5, digits));
  switch (c) {
    case Constant::kAlpha: return (one + sqrt5) / 2;
    case Constant::kBeta: return (one - sqrt5) / 2;
    case Constant::kGamma: return one + sqrt2;
    case Constant::kDelta: return one - sqrt2;
    case Constant::kSqrt2: return sqrt2;
    case Constant::kSqrt5: return sqrt5;
    case Constant::kLogAlpha: return log((one + sqrt5) / 2);
    case Constant::kLogGamma: return log(one + sqrt2);
    case Constant::kC1: return log(one + sqrt2) / log((one + sqrt5) / 2);
    case Constant::kC2: return log((one + sqrt5) / 2) / log(one + sqrt2);
  }
  throw ConfigError("unknown constant");
}

PrecisionPolicy PrecisionPolicy::from_env() {
  PrecisionPolicy policy;
  if (const char* cap = std::getenv("DIOPH_PRECISION_CAP"); cap != nullptr && *cap != '\0') {
    char* end = nullptr;
    const long value = std::strtol(cap, &end, 10);
    if (*end != '\0' || value < kMinConstantDigits) {
      throw ConfigError("DIOPH_PRECISION_CAP must be an integer >= " +
                        std::to_string(kMinConstantDigits));
    }
    policy.cap_digits = static_cast<int>(value);
  }
  return policy;
}

// --- Expr ------------------------------------------------------------------

struct Expr::Node {
  enum class Kind { kRational, kConstant, kAdd, kSub, kMul, kDiv, kNeg, kLog, kSqrt, kAbs, kPow, kMax };

  Kind kind = Kind::kRational;
  mpq_class value;
  Constant constant = Constant::kAlpha;
  long exponent = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node::Kind kind, NodePtr lhs, NodePtr rhs = nullptr, long exponent = 0) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  node->exponent = exponent;
  return node;
}

CReal eval_node(const Node& node, int digits) {
  using K = Node::Kind;
  switch (node.kind) {
    case K::kRational:
      if (node.value.get_den() == 1) return CReal::from_mpz(node.value.get_num(), digits);
      return CReal::from_mpq(node.value, digits);
    case K::kConstant: return make_constant(node.constant, std::max(digits, kMinConstantDigits));
    case K::kAdd: return eval_node(*node.lhs, digits) + eval_node(*node.rhs, digits);
    case K::kSub: return eval_node(*node.lhs, digits) - eval_node(*node.rhs, digits);
    case K::kMul: return eval_node(*node.lhs, digits) * eval_node(*node.rhs, digits);
    case K::kDiv: return eval_node(*node.lhs, digits) / eval_node(*node.rhs, digits);
    case K::kNeg: return -eval_node(*node.lhs, digits);
    case K::kLog: return log(eval_node(*node.lhs, digits));
    case K::kSqrt: return sqrt(eval_node(*node.lhs, digits));
    case K::kAbs: return abs(eval_node(*node.lhs, digits));
    case K::kPow: return pow(eval_node(*node.lhs, digits), node.exponent);
    case K::kMax: return max(eval_node(*node.lhs, digits), eval_node(*node.rhs, digits));
  }
  throw DomainError("corrupt expression node");
}

void render(const Node& node, std::ostringstream& out) {
  using K = Node::Kind;
  auto binary = [&](const char* op) {
    out << '(';
    render(*node.lhs, out);
    out << ' ' << op << ' ';
    render(*node.rhs, out);
    out << ')';
  };
  auto unary = [&](const char* fn) {
    out << fn << '(';
    render(*node.lhs, out);
    out << ')';
  };
  switch (node.kind) {
    case K::kRational: out << node.value.get_str(); break;
    case K::kConstant: out << constant_name(node.constant); break;
    case K::kAdd: binary("+"); break;
    case K::kSub: binary("-"); break;
    case K::kMul: binary("*"); break;
    case K::kDiv: binary("/"); break;
    case K::kNeg: unary("-"); break;
    case K::kLog: unary("log"); break;
    case K::kSqrt: unary("sqrt"); break;
    case K::kAbs: unary("abs"); break;
    case K::kPow:
      out << '(';
      render(*node.lhs, out);
      out << ")^" << node.exponent;
      break;
    case K::kMax:
      out << "max(";
      render(*node.lhs, out);
      out << ", ";
      render(*node.rhs, out);
      out << ')';
      break;
  }
}

}  // namespace

Expr::Expr() : Expr(0L) {}

Expr::Expr(long value) : Expr(rational(mpq_class(value))) {}

Expr Expr::integer(const mpz_class& value) { return rational(mpq_class(value)); }

Expr Expr::rational(const mpq_class& value) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kRational;
  node->value = value;
  node->value.canonicalize();
  return Expr(std::move(node));
}

Expr Expr::constant(Constant c) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kConstant;
  node->constant = c;
  return Expr(std::move(node));
}

CReal Expr::eval(int digits) const { return eval_node(*node_, digits); }

std::string Expr::to_string() const {
  std::ostringstream out;
  render(*node_, out);
  return out.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_node(Node::Kind::kAdd, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_node(Node::Kind::kSub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_node(Node::Kind::kMul, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_node(Node::Kind::kDiv, a.node_, b.node_)); }
Expr Expr::operator-() const { return Expr(make_node(Node::Kind::kNeg, node_)); }
Expr log(const Expr& x) { return Expr(make_node(Node::Kind::kLog, x.node_)); }
Expr sqrt(const Expr& x) { return Expr(make_node(Node::Kind::kSqrt, x.node_)); }
Expr abs(const Expr& x) { return Expr(make_node(Node::Kind::kAbs, x.node_)); }
Expr pow(const Expr& x, long exponent) {
  return Expr(make_node(Node::Kind::kPow, x.node_, nullptr, exponent));
}
Expr max(const Expr& a, const Expr& b) { return Expr(make_node(Node::Kind::kMax, a.node_, b.node_)); }

CReal refine(const Expr& expr, const mpq_class& target_radius, const PrecisionPolicy& policy) {
  return with_refinement(policy, "refine " + expr.to_string(), [&](int digits) -> std::optional<CReal> {
    CReal value = expr.eval(digits);
    if (value.radius_q() <= target_radius) return value;
    return std::nullopt;
  });
}

}  // namespace dioph::real
