#include "stripcert/cli/expr.hpp"

#include <cctype>
#include <vector>

#include "stripcert/errors.hpp"

namespace stripcert::cli {

using reals::ExactValue;

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ExactValue parse() {
    ExactValue v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("bad expression '" + s_ + "' at " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    const size_t end = pos_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  ExactValue expr() {
    ExactValue v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  ExactValue term() {
    ExactValue v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        ExactValue d = unary();
        if (reals::sign(d) == 0) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  ExactValue unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  ExactValue power() {
    ExactValue base = primary();
    if (!eat('^')) return base;
    bool negative = eat('-');
    if (!negative) eat('+');
    skip();
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    if (pos_ - start > 6) fail("exponent too large");
    const long e = std::stol(s_.substr(start, pos_ - start));
    if (negative) {
      if (reals::sign(base) == 0) fail("zero to a negative power");
      return 1 / reals::pow(base, e);
    }
    return reals::pow(base, e);
  }

  ExactValue primary() {
    skip();
    if (eat('(')) {
      ExactValue v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat_word("pi")) return ExactValue::pi();
    if (eat_word("sqrt")) {
      if (!eat('(')) fail("expected '(' after sqrt");
      ExactValue v = expr();
      if (!eat(')')) fail("expected ')'");
      if (reals::sign(v) < 0) fail("square root of a negative value");
      return reals::sqrt(v);
    }
    return number();
  }

  ExactValue number() {
    skip();
    const size_t start = pos_;
    std::string digits;
    long scale = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits += s_[pos_++];
        ++scale;
      }
    }
    if (digits.empty()) {
      pos_ = start;
      fail("expected a number");
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
      const size_t es = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (es == pos_ || pos_ - es > 4) fail("bad exponent");
      const long e = std::stol(s_.substr(es, pos_ - es));
      scale += neg ? e : -e;
    }
    mpz_class value(digits, 10);
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale >= 0 ? mpq_class(value, ten) : mpq_class(value * ten);
    q.canonicalize();
    return ExactValue(q);
  }
};

}  // namespace

ExactValue parse_exact(const std::string& text) {
  try {
    return Parser(text).parse();
  } catch (const DomainError& e) {
    throw InvalidArgument("bad expression '" + text + "': " + e.what());
  }
}

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts(1);
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.emplace_back();
    } else {
      parts.back() += c;
    }
  }
  return parts;
}

std::pair<ExactValue, ExactValue> parse_range(const std::string& text) {
  const auto parts = split_top_level(text);
  if (parts.size() != 2) throw InvalidArgument("range must be 'lo,hi': " + text);
  ExactValue lo = parse_exact(parts[0]);
  ExactValue hi = parse_exact(parts[1]);
  if (reals::compare(lo, hi) != reals::Ordering::Less) throw InvalidArgument("range needs lo < hi: " + text);
  return {lo, hi};
}

}  // namespace stripcert::cli
