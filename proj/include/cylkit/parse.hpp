#pragma once

#include <string>

#include "cylkit/term.hpp"

namespace cylkit {

struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " at " + std::to_string(line_) + ":" +
              std::to_string(col_)),
        line(line_),
        column(col_) {}
};

// Text grammar (whitespace insignificant, +/* associate left, - binds
// tightest, * binds tighter than +):
//   term := var | "0" | "1" | "-" term | "(" term ")" | term "+" term
//         | term "*" term | "c(" idx "," term ")" | "cg({" idx-list "}," term ")"
//         | "s(" idx "," idx "," term ")" | "p(" idx "," idx "," term ")"
//         | "d(" idx "," idx ")" | "ssub([" idx-list "]," term ")"
//   equation := term "=" term ;  var := "x" digit ;  idx := digit
// Indices are checked against the signature's dimension and node kinds
// against its admitted set.
TermPtr parse_term(const std::string& text, const Signature& sig);
Equation parse_equation(const std::string& text, const Signature& sig,
                        const std::string& label = "");

}  // namespace cylkit
