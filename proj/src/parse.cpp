#include "cylkit/parse.hpp"

#include <cctype>

namespace cylkit {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig)
      : text_(text), sig_(sig) {}

  TermPtr term() {
    TermPtr t = sum();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] != '=')
      fail("unexpected trailing input");
    return t;
  }

  Equation equation(const std::string& label) {
    TermPtr lhs = sum();
    skip_ws();
    expect('=');
    TermPtr rhs = sum();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return Equation{std::move(lhs), std::move(rhs), label};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    int line = 1, col = 1;
    for (size_t k = 0; k < pos_ && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool try_consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int idx() {
    char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected index digit");
    ++pos_;
    int v = c - '0';
    if (v >= sig_.dim.alpha())
      fail("index " + std::to_string(v) + " out of dimension " +
           std::to_string(sig_.dim.alpha()));
    return v;
  }

  std::vector<int> idx_list(char close) {
    std::vector<int> out;
    if (peek() == close) return out;
    out.push_back(idx());
    while (try_consume(',')) out.push_back(idx());
    return out;
  }

  TermPtr require(TermPtr t, TermKind kind, const char* name) {
    if (!sig_.admits(kind))
      fail(std::string(name) + " not admitted by signature " +
           sig_.to_string());
    return t;
  }

  TermPtr sum() {
    TermPtr t = product();
    while (try_consume('+')) t = Term::sum(std::move(t), product());
    return t;
  }

  TermPtr product() {
    TermPtr t = unary();
    while (try_consume('*')) t = Term::product(std::move(t), unary());
    return t;
  }

  TermPtr unary() {
    if (try_consume('-')) return Term::complement(unary());
    return atom();
  }

  TermPtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      TermPtr t = sum();
      expect(')');
      return t;
    }
    if (c == '0') {
      ++pos_;
      return Term::zero();
    }
    if (c == '1') {
      ++pos_;
      return Term::one();
    }
    if (c == 'x') {
      ++pos_;
      char d = pos_ < text_.size() ? text_[pos_] : '\0';
      if (!std::isdigit(static_cast<unsigned char>(d))) fail("expected variable digit");
      ++pos_;
      return Term::make_var(d - '0');
    }
    if (c == 'c') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == 'g') {
        ++pos_;
        expect('(');
        expect('{');
        auto gamma = idx_list('}');
        expect('}');
        expect(',');
        TermPtr child = sum();
        expect(')');
        return require(Term::cyl_set(std::move(gamma), std::move(child)),
                       TermKind::CylSet, "cg");
      }
      expect('(');
      int i = idx();
      expect(',');
      TermPtr child = sum();
      expect(')');
      return require(Term::cyl(i, std::move(child)), TermKind::Cyl, "c");
    }
    if (c == 's') {
      ++pos_;
      if (text_.compare(pos_, 3, "sub") == 0) {
        pos_ += 3;
        expect('(');
        expect('[');
        auto list = idx_list(']');
        expect(']');
        expect(',');
        TermPtr child = sum();
        expect(')');
        if (static_cast<int>(list.size()) != sig_.dim.alpha())
          fail("ssub map must list all " + std::to_string(sig_.dim.alpha()) +
               " values");
        std::vector<uint8_t> map(list.begin(), list.end());
        return require(Term::subst_sigma(std::move(map), std::move(child)),
                       TermKind::SubstSigma, "ssub");
      }
      expect('(');
      int i = idx();
      expect(',');
      int j = idx();
      expect(',');
      TermPtr child = sum();
      expect(')');
      return require(Term::subst(i, j, std::move(child)), TermKind::Subst, "s");
    }
    if (c == 'p') {
      ++pos_;
      expect('(');
      int i = idx();
      expect(',');
      int j = idx();
      expect(',');
      TermPtr child = sum();
      expect(')');
      return require(Term::perm(i, j, std::move(child)), TermKind::Perm, "p");
    }
    if (c == 'd') {
      ++pos_;
      expect('(');
      int i = idx();
      expect(',');
      int j = idx();
      expect(')');
      return require(Term::diag(i, j), TermKind::Diag, "d");
    }
    fail("expected term");
  }

  const std::string& text_;
  const Signature& sig_;
  size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& text, const Signature& sig) {
  return Parser(text, sig).term();
}

Equation parse_equation(const std::string& text, const Signature& sig,
                        const std::string& label) {
  return Parser(text, sig).equation(label);
}

}  // namespace cylkit
