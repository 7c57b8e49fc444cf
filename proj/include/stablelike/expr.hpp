#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablelike::expr {

// Grammar (stable public contract, used verbatim in model configs):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?          ('^' right-associative)
//   unary  := '-' unary | atom
//   atom   := number | 'x' | name '(' args ')' | '(' expr ')'
// Comparisons (< <= > >=) are allowed only as the first argument of ite.
// Functions: abs, sign, min, max, sin, cos, exp, log, floor, ite.

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class CmpOp { Lt, Le, Gt, Ge };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Number, Var, Neg, Binary, Compare, Call };
    Kind kind;
    double number = 0.0;             // Number
    BinOp bin = BinOp::Add;          // Binary
    CmpOp cmp = CmpOp::Lt;           // Compare
    std::string name;                // Call
    std::vector<NodePtr> args;       // operands / call arguments
};

struct Expr {
    NodePtr root;
};

// Syntax / arity / unknown-function error with the byte offset into the
// source and the tokens that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset,
               std::vector<std::string> expected)
        : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Division by zero, log of a non-positive value, 0^negative, fractional
// power of a negative base, or a non-finite intermediate.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Expr parse(const std::string& source);

double eval(const Expr& e, double x);

std::string to_string(const Expr& e);

// A parsed profile together with its source text.
struct Profile {
    std::string source;
    Expr ast;

    static Profile compile(const std::string& source) {
        return Profile{source, parse(source)};
    }
    double operator()(double x) const { return eval(ast, x); }
};

// 1-based line/column of a byte offset (for CLI diagnostics).
std::pair<int, int> line_column(const std::string& source, std::size_t offset);

}  // namespace stablelike::expr
