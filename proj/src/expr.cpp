#include "stablelike/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace stablelike::expr {

namespace {

const std::map<std::string, int>& function_arity() {
    static const std::map<std::string, int> table = {
        {"abs", 1}, {"sign", 1}, {"min", 2},   {"max", 2}, {"sin", 1},
        {"cos", 1}, {"exp", 1},  {"log", 1},   {"floor", 1}, {"ite", 3}};
    return table;
}

struct Token {
    enum class Type { Number, Ident, Punct, End };
    Type type;
    std::string text;
    double number = 0.0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        current_.offset = pos_;
        if (pos_ >= src_.size()) {
            current_ = {Token::Type::End, "", 0.0, pos_};
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            double value = 0.0;
            const char* begin = src_.data() + pos_;
            const char* end = src_.data() + src_.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc())
                throw ParseError("malformed number", pos_, {"number"});
            current_ = {Token::Type::Number, std::string(begin, ptr), value, pos_};
            pos_ += static_cast<std::size_t>(ptr - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_'))
                ++pos_;
            current_ = {Token::Type::Ident, src_.substr(start, pos_ - start), 0.0, start};
            return;
        }
        // multi-character comparison operators first
        if ((c == '<' || c == '>') && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
            current_ = {Token::Type::Punct, src_.substr(pos_, 2), 0.0, pos_};
            pos_ += 2;
            return;
        }
        static const std::string singles = "+-*/^(),<>";
        if (singles.find(c) != std::string::npos) {
            current_ = {Token::Type::Punct, std::string(1, c), 0.0, pos_};
            ++pos_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_,
                         {"expression"});
    }

    const std::string& src_;
    Token current_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    Expr run() {
        NodePtr root = parse_expr();
        const Token& t = lex_.peek();
        if (t.type != Token::Type::End)
            throw ParseError("trailing input after expression", t.offset,
                             {"end of input", "operator"});
        return Expr{root};
    }

private:
    bool accept_punct(const std::string& p) {
        if (lex_.peek().type == Token::Type::Punct && lex_.peek().text == p) {
            lex_.take();
            return true;
        }
        return false;
    }

    void expect_punct(const std::string& p, const char* context) {
        const Token& t = lex_.peek();
        if (t.type != Token::Type::Punct || t.text != p)
            throw ParseError(std::string("expected '") + p + "' " + context, t.offset,
                             {"'" + p + "'"});
        lex_.take();
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept_punct("+"))
                lhs = binary(BinOp::Add, lhs, parse_term());
            else if (accept_punct("-"))
                lhs = binary(BinOp::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (accept_punct("*"))
                lhs = binary(BinOp::Mul, lhs, parse_factor());
            else if (accept_punct("/"))
                lhs = binary(BinOp::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    NodePtr parse_factor() {
        NodePtr base = parse_unary();
        if (accept_punct("^")) return binary(BinOp::Pow, base, parse_factor());
        return base;
    }

    NodePtr parse_unary() {
        if (accept_punct("-")) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Neg;
            n->args = {parse_unary()};
            return n;
        }
        return parse_atom();
    }

    NodePtr parse_atom() {
        const Token t = lex_.take();
        if (t.type == Token::Type::Number) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->number = t.number;
            return n;
        }
        if (t.type == Token::Type::Ident) {
            if (t.text == "x") {
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Var;
                return n;
            }
            const auto& table = function_arity();
            const auto it = table.find(t.text);
            if (it == table.end())
                throw ParseError("unknown function '" + t.text + "'", t.offset,
                                 {"abs", "sign", "min", "max", "sin", "cos", "exp",
                                  "log", "floor", "ite", "x"});
            expect_punct("(", "after function name");
            std::vector<NodePtr> args;
            if (t.text == "ite") {
                args.push_back(parse_comparison());
            } else {
                args.push_back(parse_expr());
            }
            while (accept_punct(",")) args.push_back(parse_expr());
            expect_punct(")", "to close the argument list");
            if (static_cast<int>(args.size()) != it->second)
                throw ParseError("function '" + t.text + "' takes " +
                                     std::to_string(it->second) + " argument(s), got " +
                                     std::to_string(args.size()),
                                 t.offset, {});
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Call;
            n->name = t.text;
            n->args = std::move(args);
            return n;
        }
        if (t.type == Token::Type::Punct && t.text == "(") {
            NodePtr inner = parse_expr();
            expect_punct(")", "to close the parenthesis");
            return inner;
        }
        throw ParseError("expected an expression", t.offset,
                         {"number", "x", "function", "'('", "'-'"});
    }

    // first argument of ite: expr cmp expr
    NodePtr parse_comparison() {
        NodePtr lhs = parse_expr();
        const Token t = lex_.peek();
        CmpOp op;
        if (t.type == Token::Type::Punct && t.text == "<")
            op = CmpOp::Lt;
        else if (t.type == Token::Type::Punct && t.text == "<=")
            op = CmpOp::Le;
        else if (t.type == Token::Type::Punct && t.text == ">")
            op = CmpOp::Gt;
        else if (t.type == Token::Type::Punct && t.text == ">=")
            op = CmpOp::Ge;
        else
            throw ParseError("ite requires a comparison as its first argument",
                             t.offset, {"'<'", "'<='", "'>'", "'>='"});
        lex_.take();
        NodePtr rhs = parse_expr();
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Compare;
        n->cmp = op;
        n->args = {lhs, rhs};
        return n;
    }

    static NodePtr binary(BinOp op, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Binary;
        n->bin = op;
        n->args = {std::move(a), std::move(b)};
        return n;
    }

    Lexer lex_;
};

double check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw EvalError(std::string(what) + " produced a non-finite value");
    return v;
}

double eval_node(const Node& n, double x);

bool eval_compare(const Node& n, double x) {
    const double a = eval_node(*n.args[0], x);
    const double b = eval_node(*n.args[1], x);
    switch (n.cmp) {
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Ge: return a >= b;
    }
    return false;
}

double eval_call(const Node& n, double x) {
    const std::string& f = n.name;
    if (f == "ite")
        return eval_compare(*n.args[0], x) ? eval_node(*n.args[1], x)
                                           : eval_node(*n.args[2], x);
    const double a = eval_node(*n.args[0], x);
    if (f == "abs") return std::abs(a);
    if (f == "sign") return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
    if (f == "sin") return std::sin(a);
    if (f == "cos") return std::cos(a);
    if (f == "exp") return check_finite(std::exp(a), "exp");
    if (f == "floor") return std::floor(a);
    if (f == "log") {
        if (!(a > 0.0)) throw EvalError("log of a non-positive value");
        return std::log(a);
    }
    const double b = eval_node(*n.args[1], x);
    if (f == "min") return std::min(a, b);
    if (f == "max") return std::max(a, b);
    throw EvalError("unknown function in AST: " + f);
}

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case Node::Kind::Number: return n.number;
        case Node::Kind::Var: return x;
        case Node::Kind::Neg: return -eval_node(*n.args[0], x);
        case Node::Kind::Call: return eval_call(n, x);
        case Node::Kind::Compare:
            throw EvalError("comparison outside of ite");
        case Node::Kind::Binary: {
            const double a = eval_node(*n.args[0], x);
            const double b = eval_node(*n.args[1], x);
            switch (n.bin) {
                case BinOp::Add: return check_finite(a + b, "addition");
                case BinOp::Sub: return check_finite(a - b, "subtraction");
                case BinOp::Mul: return check_finite(a * b, "multiplication");
                case BinOp::Div:
                    if (b == 0.0) throw EvalError("division by zero");
                    return check_finite(a / b, "division");
                case BinOp::Pow: {
                    if (a == 0.0 && b < 0.0)
                        throw EvalError("zero raised to a negative power");
                    if (a < 0.0 && b != std::floor(b))
                        throw EvalError("fractional power of a negative base");
                    return check_finite(std::pow(a, b), "power");
                }
            }
        }
    }
    throw EvalError("malformed AST");
}

const char* bin_symbol(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Pow: return "^";
    }
    return "?";
}

const char* cmp_symbol(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

void print_node(std::ostringstream& out, const Node& n);

void print_paren(std::ostringstream& out, const Node& n) {
    out << '(';
    print_node(out, n);
    out << ')';
}

void print_node(std::ostringstream& out, const Node& n) {
    switch (n.kind) {
        case Node::Kind::Number: {
            char buf[32];
            snprintf(buf, sizeof buf, "%.17g", n.number);
            out << buf;
            return;
        }
        case Node::Kind::Var: out << 'x'; return;
        case Node::Kind::Neg:
            out << '-';
            print_paren(out, *n.args[0]);
            return;
        case Node::Kind::Binary:
            print_paren(out, *n.args[0]);
            out << bin_symbol(n.bin);
            print_paren(out, *n.args[1]);
            return;
        case Node::Kind::Compare:
            print_node(out, *n.args[0]);
            out << cmp_symbol(n.cmp);
            print_node(out, *n.args[1]);
            return;
        case Node::Kind::Call:
            out << n.name << '(';
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) out << ',';
                print_node(out, *n.args[i]);
            }
            out << ')';
            return;
    }
}

}  // namespace

Expr parse(const std::string& source) { return Parser(source).run(); }

double eval(const Expr& e, double x) {
    if (!e.root) throw EvalError("empty expression");
    return eval_node(*e.root, x);
}

std::string to_string(const Expr& e) {
    std::ostringstream out;
    if (e.root) print_node(out, *e.root);
    return out.str();
}

std::pair<int, int> line_column(const std::string& source, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
        if (source[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace stablelike::expr

