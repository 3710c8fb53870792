#pragma once

#include <stdexcept>
#include <string>

#include "grpd/lpa.hpp"

namespace grpd {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

class UnknownId : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses and normalises an expression over the graph.
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := ['-'] [coef ['*']] factor* ; a bare coefficient means coef·Σv
///   factor := ('v' | 's' | 't') '(' id ')' | id | '(' id ('.' id)* ')^*'
///   coef   := int ['/' int]
///
/// Factors multiply by juxtaposition or '.'; a bare id is a vertex or s_e, so
/// printed normal forms parse back. Throws ParseError (1-based line/column)
/// or UnknownId.
LpaElement parse_lpa(GraphPtr g, Ring ring, const std::string& text);

}  // namespace grpd
