#include "stripcert/reals/exact_value.hpp"

#include <atomic>
#include <sstream>

#include "stripcert/errors.hpp"
#include "stripcert/reals/surd.hpp"

namespace stripcert::reals {

using detail::Node;
using detail::Op;

namespace {

std::atomic<mpfr_prec_t> g_precision_cap{4096};

bool is_rational_value(const ExactValue& x, long v) { return x.is_rational() && x.node().value == v; }

bool is_perfect_square(const mpz_class& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

}  // namespace

void set_precision_cap(mpfr_prec_t bits) { g_precision_cap.store(bits); }
mpfr_prec_t precision_cap() { return g_precision_cap.load(); }

ExactValue::ExactValue() : ExactValue(mpq_class(0)) {}

ExactValue::ExactValue(long v) : ExactValue(mpq_class(v)) {}

ExactValue::ExactValue(const mpq_class& q) {
  auto n = std::make_shared<Node>();
  n->op = Op::Rational;
  n->value = q;
  n->value.canonicalize();
  node_ = std::move(n);
}

ExactValue ExactValue::pi() {
  static const ExactValue value = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::Pi;
    return ExactValue(std::shared_ptr<const Node>(std::move(n)));
  }();
  return value;
}

ExactValue ExactValue::unchecked(Op op, const ExactValue& lhs, const ExactValue& rhs, long exponent) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = lhs.node_;
  if (op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div) n->rhs = rhs.node_;
  n->exponent = exponent;
  return ExactValue(std::shared_ptr<const Node>(std::move(n)));
}

namespace {

ExactValue wrap(const std::shared_ptr<const Node>& n) { return ExactValue::from_node(n); }

Ball eval_node(const Node& n, mpfr_prec_t prec) {
  switch (n.op) {
    case Op::Rational: return Ball::from_rational(n.value, prec);
    case Op::Pi: return Ball::pi(prec);
    case Op::Add: return eval_node(*n.lhs, prec) + eval_node(*n.rhs, prec);
    case Op::Sub: return eval_node(*n.lhs, prec) - eval_node(*n.rhs, prec);
    case Op::Mul: return eval_node(*n.lhs, prec) * eval_node(*n.rhs, prec);
    case Op::Div: return eval_node(*n.lhs, prec) / eval_node(*n.rhs, prec);
    case Op::Neg: return -eval_node(*n.lhs, prec);
    case Op::Sqrt: return sqrt(eval_node(*n.lhs, prec));
    case Op::Atan: return atan(eval_node(*n.lhs, prec));
    case Op::Pow: return pow(eval_node(*n.lhs, prec), n.exponent);
  }
  return Ball::whole_line(prec);
}

void write_prefix(const Node& n, std::ostream& os) {
  switch (n.op) {
    case Op::Rational: os << n.value.get_str(); return;
    case Op::Pi: os << "pi"; return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char* sym = n.op == Op::Add ? "+" : n.op == Op::Sub ? "-" : n.op == Op::Mul ? "*" : "/";
      os << '(' << sym << ' ';
      write_prefix(*n.lhs, os);
      os << ' ';
      write_prefix(*n.rhs, os);
      os << ')';
      return;
    }
    case Op::Neg:
      os << "(- ";
      write_prefix(*n.lhs, os);
      os << ')';
      return;
    case Op::Sqrt:
    case Op::Atan:
      os << (n.op == Op::Sqrt ? "(sqrt " : "(atan ");
      write_prefix(*n.lhs, os);
      os << ')';
      return;
    case Op::Pow:
      os << "(pow ";
      write_prefix(*n.lhs, os);
      os << ' ' << n.exponent << ')';
      return;
  }
}

std::optional<SurdElement> to_surd(const Node& n) {
  switch (n.op) {
    case Op::Rational: return SurdElement::rational(n.value);
    case Op::Pi: return SurdElement::pi();
    case Op::Neg: {
      auto a = to_surd(*n.lhs);
      if (!a) return std::nullopt;
      return neg(*a);
    }
    case Op::Sqrt: {
      auto a = to_surd(*n.lhs);
      if (!a) return std::nullopt;
      return sqrt(*a);
    }
    case Op::Pow: {
      auto a = to_surd(*n.lhs);
      if (!a) return std::nullopt;
      return pow(*a, n.exponent);
    }
    case Op::Atan: return std::nullopt;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      auto a = to_surd(*n.lhs);
      if (!a) return std::nullopt;
      auto b = to_surd(*n.rhs);
      if (!b) return std::nullopt;
      if (n.op == Op::Add) return add(*a, *b);
      if (n.op == Op::Sub) return sub(*a, *b);
      if (n.op == Op::Mul) return mul(*a, *b);
      return div(*a, *b);
    }
  }
  return std::nullopt;
}

// Rendering of normal forms. Terms are emitted from the lowest degree up,
// with subtraction for negative coefficients.

ExactValue pi_power(int j) {
  return j == 1 ? ExactValue::pi() : ExactValue::unchecked(Op::Pow, ExactValue::pi(), ExactValue(), j);
}

ExactValue monomial_tree(const mpq_class& c, int j) {
  if (j == 0) return ExactValue(c);
  if (c == 1) return pi_power(j);
  return ExactValue::unchecked(Op::Mul, ExactValue(c), pi_power(j));
}

ExactValue poly_tree(const Poly& p) {
  const auto& cs = p.coefficients();
  std::optional<ExactValue> acc;
  for (size_t i = 0; i < cs.size(); ++i) {
    const mpq_class& c = cs[i];
    if (c == 0) continue;
    const int j = static_cast<int>(i);
    if (!acc) {
      if (c < 0 && j > 0)
        acc = ExactValue::unchecked(Op::Neg, monomial_tree(-c, j));
      else
        acc = monomial_tree(c, j);
    } else if (c > 0) {
      acc = ExactValue::unchecked(Op::Add, *acc, monomial_tree(c, j));
    } else {
      acc = ExactValue::unchecked(Op::Sub, *acc, monomial_tree(-c, j));
    }
  }
  return acc ? *acc : ExactValue(0L);
}

ExactValue ratfunc_tree(const RatFunc& f) {
  if (f.den() == Poly(mpq_class(1))) return poly_tree(f.num());
  return ExactValue::unchecked(Op::Div, poly_tree(f.num()), poly_tree(f.den()));
}

ExactValue render(const SurdElement& s) {
  if (!s.has_surd()) return ratfunc_tree(s.rational_part());
  const RatFunc& q = s.surd_coefficient();
  const Poly& r = s.radicand();
  ExactValue term;
  int sgn = 1;
  if (q.is_polynomial() && q.num().is_monomial()) {
    const mpq_class c = q.num().leading();
    const int j = q.num().degree();
    sgn = c > 0 ? 1 : -1;
    ExactValue root = ExactValue::unchecked(Op::Sqrt, poly_tree(r.scaled(c * c)));
    term = j == 0 ? root : ExactValue::unchecked(Op::Mul, pi_power(j), root);
  } else {
    term = ExactValue::unchecked(Op::Mul, ratfunc_tree(q), ExactValue::unchecked(Op::Sqrt, poly_tree(r)));
  }
  if (s.rational_part().is_zero()) return sgn > 0 ? term : ExactValue::unchecked(Op::Neg, term);
  return ExactValue::unchecked(sgn > 0 ? Op::Add : Op::Sub, ratfunc_tree(s.rational_part()), term);
}

ExactValue canonicalize_node(const ExactValue& x) {
  const Node& n = x.node();
  if (n.op == Op::Rational || n.op == Op::Pi) return x;
  if (auto s = to_surd(n)) return render(*s);
  const ExactValue lhs = canonicalize_node(wrap(n.lhs));
  const ExactValue rhs = n.rhs ? canonicalize_node(wrap(n.rhs)) : ExactValue();
  return ExactValue::unchecked(n.op, lhs, rhs, n.exponent);
}

}  // namespace


Ball ExactValue::eval(mpfr_prec_t precision) const { return eval_node(*node_, precision); }

double ExactValue::approx() const { return eval(64).center_double(); }

std::optional<mpq_class> ExactValue::as_rational() const {
  if (is_rational()) return node_->value;
  return std::nullopt;
}

std::string ExactValue::to_prefix() const {
  std::ostringstream os;
  write_prefix(*node_, os);
  return os.str();
}

std::string ExactValue::to_decimal(int digits) const {
  const mpfr_prec_t start = static_cast<mpfr_prec_t>(digits * 3.33) + 64;
  for (mpfr_prec_t bits = start; bits <= 16 * start; bits *= 2) {
    Ball b = eval(bits);
    if (!b.contains_zero()) {
      // Relative radius small enough that the printed digits are stable
      // except for a final-digit rounding boundary.
      Mpfr rad = b.radius();
      Mpfr mag = b.center();
      mpfr_abs(mag.get(), mag.get(), MPFR_RNDN);
      mpfr_mul_2si(rad.get(), rad.get(), static_cast<long>(digits * 3.33) + 8, MPFR_RNDU);
      if (mpfr_cmp(rad.get(), mag.get()) < 0) return b.center_string(digits);
    } else if (is_rational() && node_->value == 0) {
      return "0";
    }
  }
  if (sign(*this) == 0) return "0";
  return eval(16 * start).center_string(digits);
}

ExactValue ExactValue::from_quadratic_pi_surd(const QuadraticPiSurd& s) {
  if (s.b == 0) return ExactValue(s.a);
  const ExactValue inner = ExactValue(s.c) + ExactValue(s.d) * pow(pi(), 2);
  return ExactValue(s.a) + ExactValue(s.b) * sqrt(inner);
}

ExactValue operator+(const ExactValue& a, const ExactValue& b) {
  if (a.is_rational() && b.is_rational()) return ExactValue(a.node().value + b.node().value);
  if (is_rational_value(a, 0)) return b;
  if (is_rational_value(b, 0)) return a;
  if (b.is_rational() && b.node().value < 0) return ExactValue::unchecked(Op::Sub, a, ExactValue(-b.node().value));
  if (b.node().op == Op::Neg) return ExactValue::unchecked(Op::Sub, a, wrap(b.node().lhs));
  if (b.node().op == Op::Mul && b.node().lhs->op == Op::Rational && b.node().lhs->value < 0)
    return a - (ExactValue(-b.node().lhs->value) * wrap(b.node().rhs));
  return ExactValue::unchecked(Op::Add, a, b);
}

ExactValue operator-(const ExactValue& a, const ExactValue& b) {
  if (a.is_rational() && b.is_rational()) return ExactValue(a.node().value - b.node().value);
  if (is_rational_value(b, 0)) return a;
  if (is_rational_value(a, 0)) return -b;
  if (b.is_rational() && b.node().value < 0) return ExactValue::unchecked(Op::Add, a, ExactValue(-b.node().value));
  if (b.node().op == Op::Neg) return ExactValue::unchecked(Op::Add, a, wrap(b.node().lhs));
  if (b.node().op == Op::Mul && b.node().lhs->op == Op::Rational && b.node().lhs->value < 0)
    return a + (ExactValue(-b.node().lhs->value) * wrap(b.node().rhs));
  return ExactValue::unchecked(Op::Sub, a, b);
}

ExactValue operator*(const ExactValue& a, const ExactValue& b) {
  if (a.is_rational() && b.is_rational()) return ExactValue(a.node().value * b.node().value);
  if (is_rational_value(a, 0) || is_rational_value(b, 0)) return ExactValue(0L);
  if (is_rational_value(a, 1)) return b;
  if (is_rational_value(b, 1)) return a;
  if (is_rational_value(a, -1)) return -b;
  if (is_rational_value(b, -1)) return -a;
  if (b.is_rational()) return ExactValue::unchecked(Op::Mul, b, a);
  return ExactValue::unchecked(Op::Mul, a, b);
}

ExactValue operator/(const ExactValue& a, const ExactValue& b) {
  if (b.is_rational()) {
    if (b.node().value == 0) throw DomainError("division by zero");
    if (a.is_rational()) return ExactValue(mpq_class(a.node().value / b.node().value));
    if (b.node().value == 1) return a;
    return ExactValue(mpq_class(1 / b.node().value)) * a;
  }
  int s;
  try {
    s = sign(b);
  } catch (const Undecided&) {
    throw DomainError("divisor sign cannot be certified: " + b.to_prefix());
  }
  if (s == 0) throw DomainError("division by zero: " + b.to_prefix());
  if (is_rational_value(a, 0)) return a;
  return ExactValue::unchecked(Op::Div, a, b);
}

ExactValue operator-(const ExactValue& a) {
  if (a.is_rational()) return ExactValue(mpq_class(-a.node().value));
  if (a.node().op == Op::Neg) return wrap(a.node().lhs);
  return ExactValue::unchecked(Op::Neg, a);
}

ExactValue sqrt(const ExactValue& a) {
  if (a.is_rational()) {
    const mpq_class& q = a.node().value;
    if (q < 0) throw DomainError("sqrt of negative rational " + q.get_str());
    if (is_perfect_square(q.get_num()) && is_perfect_square(q.get_den()))
      return ExactValue(mpq_class(mpz_class(::sqrt(q.get_num())), mpz_class(::sqrt(q.get_den()))));
    return ExactValue::unchecked(Op::Sqrt, a);
  }
  int s;
  try {
    s = sign(a);
  } catch (const Undecided&) {
    throw DomainError("sqrt argument sign cannot be certified: " + a.to_prefix());
  }
  if (s < 0) throw DomainError("sqrt of negative value " + a.to_prefix());
  if (s == 0) return ExactValue(0L);
  return ExactValue::unchecked(Op::Sqrt, a);
}

ExactValue atan(const ExactValue& a) {
  int s;
  try {
    s = sign(a);
  } catch (const Undecided&) {
    throw DomainError("atan argument sign cannot be certified: " + a.to_prefix());
  }
  if (s <= 0) throw DomainError("atan requires a positive argument");
  return ExactValue::unchecked(Op::Atan, a);
}

ExactValue pow(const ExactValue& a, long exponent) {
  if (exponent == 0) return ExactValue(1L);
  if (exponent == 1) return a;
  if (a.is_rational()) {
    const mpq_class& q = a.node().value;
    if (q == 0 && exponent < 0) throw DomainError("zero to a negative power");
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    mpq_class r = exponent < 0 ? mpq_class(den, num) : mpq_class(num, den);
    r.canonicalize();
    return ExactValue(r);
  }
  if (exponent < 0 && sign(a) == 0) throw DomainError("zero to a negative power");
  if (a.node().op == Op::Pow) return ExactValue::unchecked(Op::Pow, wrap(a.node().lhs), ExactValue(), a.node().exponent * exponent);
  return ExactValue::unchecked(Op::Pow, a, ExactValue(), exponent);
}

bool structurally_equal(const ExactValue& a, const ExactValue& b) {
  if (a.same_node(b)) return true;
  auto sa = to_surd(a.node());
  auto sb = to_surd(b.node());
  if (sa && sb) return *sa == *sb;
  if (sa.has_value() != sb.has_value()) return false;
  return canonicalize(a).to_prefix() == canonicalize(b).to_prefix();
}

Ordering compare(const ExactValue& a, const ExactValue& b) {
  if (a.same_node(b)) return Ordering::Equal;
  if (a.is_rational() && b.is_rational()) {
    const int c = cmp(a.node().value, b.node().value);
    return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
  }
  const mpfr_prec_t cap = precision_cap();
  bool structural_checked = false;
  for (mpfr_prec_t bits = 64; bits <= cap; bits *= 2) {
    const Ball x = a.eval(bits);
    const Ball y = b.eval(bits);
    if (certainly_less(x, y)) return Ordering::Less;
    if (certainly_less(y, x)) return Ordering::Greater;
    if (!structural_checked) {
      structural_checked = true;
      if (structurally_equal(a, b)) return Ordering::Equal;
    }
  }
  throw Undecided("comparison unresolved at " + std::to_string(cap) + " bits: " + a.to_prefix() + " vs " +
                  b.to_prefix());
}

int sign(const ExactValue& a) {
  switch (compare(a, ExactValue(0L))) {
    case Ordering::Less: return -1;
    case Ordering::Greater: return 1;
    case Ordering::Equal: return 0;
  }
  return 0;
}

const ExactValue& min(const ExactValue& a, const ExactValue& b) { return less(b, a) ? b : a; }
const ExactValue& max(const ExactValue& a, const ExactValue& b) { return less(a, b) ? b : a; }

ExactValue canonicalize(const ExactValue& a) { return canonicalize_node(a); }

std::optional<QuadraticPiSurd> as_quadratic_pi_surd(const ExactValue& x) {
  auto s = to_surd(x.node());
  if (!s) return std::nullopt;
  const RatFunc& p = s->rational_part();
  if (!p.is_constant()) return std::nullopt;
  QuadraticPiSurd out{p.constant(), 0, 0, 0};
  if (!s->has_surd()) return out;
  const RatFunc& q = s->surd_coefficient();
  if (!q.is_polynomial() || !q.num().is_monomial()) return std::nullopt;
  const mpq_class c = q.num().leading();
  const int j = q.num().degree();
  const Poly r = s->radicand().scaled(c * c);
  out.b = c > 0 ? 1 : -1;
  if (j == 0) {
    if (r.degree() > 2 || r.coefficient(1) != 0) return std::nullopt;
    out.c = r.coefficient(0);
    out.d = r.coefficient(2);
    return out;
  }
  if (j == 1 && r.is_constant()) {
    out.d = r.coefficient(0);
    return out;
  }
  return std::nullopt;
}

}  // namespace stripcert::reals
