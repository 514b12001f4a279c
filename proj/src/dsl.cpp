#include "fy/dsl.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "fy/errors.hpp"

namespace fy {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const DslContext& ctx) : text_(text), ctx_(ctx) {}

  KFunction parse() {
    KFunction f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    raise(Errc::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" +
                                std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    size_t end = pos_ + w.size();
    if (end < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      return false;
    pos_ = end;
    return true;
  }

  Scalar scalar() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == '/'))
      ++pos_;
    if (pos_ == start) fail("expected a scalar literal");
    Scalar s = Scalar::parse(text_.substr(start, pos_ - start));
    return ctx_.float_mode ? s.to_float() : s;
  }

  long long integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  std::vector<int> digit_list() {
    expect('[');
    std::vector<int> out;
    do {
      out.push_back(static_cast<int>(integer()));
    } while (eat(','));
    expect(']');
    return out;
  }

  KFunction expr() {
    KFunction f = term();
    while (eat('+')) f = f + term();
    return f;
  }

  KFunction term() {
    KFunction f = factor();
    while (eat('*')) f = f * factor();
    return f;
  }

  KFunction factor() {
    KFunction f = primary();
    if (eat('^')) {
      long long m = integer();
      if (m < 0) fail("negative power");
      f = KFunction::power(f, static_cast<int>(m));
    }
    return f;
  }

  KFunction primary() {
    skip_ws();
    if (eat('(')) {
      KFunction f = expr();
      expect(')');
      return f;
    }
    if (eat_word("const")) {
      expect('(');
      Scalar c = scalar();
      expect(')');
      return KFunction::constant(std::move(c));
    }
    if (eat_word("cantor")) {
      expect('(');
      long long k = integer();
      expect(',');
      Scalar p = scalar();
      expect(')');
      return KFunction::cantor(static_cast<int>(k), std::move(p));
    }
    if (eat_word("step")) {
      expect('(');
      Scalar c = scalar();
      expect(')');
      return KFunction::step(std::move(c));
    }
    if (eat_word("digitw")) {
      expect('(');
      expect('[');
      std::vector<Scalar> coeffs;
      do {
        coeffs.push_back(scalar());
      } while (eat(','));
      expect(']');
      expect(';');
      Scalar r = scalar();
      expect(')');
      return KFunction::digit_weighted(std::move(coeffs), std::move(r));
    }
    if (eat_word("scale")) {
      expect('(');
      Scalar c = scalar();
      expect(',');
      KFunction f = expr();
      expect(')');
      return KFunction::scale(std::move(c), std::move(f));
    }
    if (eat_word("pullback")) {
      if (!ctx_.host || !ctx_.target) fail("pullback needs a source and a target IFS in scope");
      expect('(');
      std::vector<int> rho = digit_list();
      expect(',');
      DslContext inner = ctx_;
      inner.host = ctx_.target;
      inner.target = nullptr;
      // Scan the balanced argument, then parse it through the inner context.
      size_t depth = 1, start = pos_;
      while (pos_ < text_.size() && depth > 0) {
        if (text_[pos_] == '(') ++depth;
        if (text_[pos_] == ')') --depth;
        if (depth > 0) ++pos_;
      }
      if (depth != 0) fail("unbalanced pullback");
      KFunction inner_f = parse_function(text_.substr(start, pos_ - start), inner);
      expect(')');
      auto map = std::make_shared<const SubstitutionMap>(SubstitutionMap::make(
          *ctx_.host, *ctx_.target, Permutation(std::move(rho)), ctx_.pullback_check_depth));
      if (!map->well_defined().verified)
        raise(Errc::NotWellDefined, "pullback permutation failed verification");
      return KFunction::pullback(std::move(map), std::move(inner_f));
    }
    if (eat_word("x")) return KFunction::identity();
    fail("expected a function");
  }

  std::string_view text_;
  const DslContext& ctx_;
  size_t pos_ = 0;
};

}  // namespace

KFunction parse_function(std::string_view text, const DslContext& ctx) {
  return Parser(text, ctx).parse();
}

}  // namespace fy
