#pragma once

// The calculator tool: exact arithmetic expression parsing and evaluation.
//
// Grammar (precedence low -> high, left-associative, whitespace ignored):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | '(' expr ')' | integer

#include "toolalign/error.hpp"
#include "toolalign/rational.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace toolalign::arith {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind { literal, negate, add, sub, mul, div };

    Kind kind = Kind::literal;
    BigInt value;       // literal only
    ExprPtr lhs;        // negate uses lhs alone
    ExprPtr rhs;
    std::size_t offset = 0; // byte offset of the node's first token

    static ExprPtr literal(BigInt v, std::size_t offset = 0);
    static ExprPtr unary(Kind kind, ExprPtr operand, std::size_t offset = 0);
    static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs, std::size_t offset = 0);
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public Error {
public:
    EvalError(std::string subexpression, std::size_t offset, const std::string& message)
        : Error(message + " in '" + subexpression + "' at offset " + std::to_string(offset)),
          subexpression_(std::move(subexpression)),
          offset_(offset) {}
    const std::string& subexpression() const { return subexpression_; }
    std::size_t offset() const { return offset_; }

private:
    std::string subexpression_;
    std::size_t offset_;
};

// Throws ParseError with the byte offset of the offending character.
ExprPtr parse(std::string_view text);

// Exact rational result. Throws EvalError naming the dividing subexpression
// on division by zero.
Rational evaluate(const Expr& expr);

// Canonical text form; parse(render(e)) reproduces the identical tree.
std::string render(const Expr& expr);

bool equal(const Expr& a, const Expr& b);

// Executes a calculator tool-call object:
//   {"tool_name": "calculator", "expression": "2+3*4"}
// and returns the canonically rendered exact value. Throws Error for other
// tool names (they are modeled by q_tool, not executed locally).
std::string execute_tool_call(const std::string& call_json);

} // namespace toolalign::arith
