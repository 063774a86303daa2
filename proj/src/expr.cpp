#include "fnfb/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "fnfb/errors.hpp"

namespace fnfb {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End } kind;
    double value = 0.0;
    std::string ident;
    size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::End;
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + i_;
            char* end = nullptr;
            tok_.value = std::strtod(begin, &end);
            if (end == begin) throw ConfigError("expression: bad number at position " + std::to_string(i_));
            i_ += static_cast<size_t>(end - begin);
            tok_.kind = Token::Number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
            tok_.ident = s_.substr(i_, j - i_);
            tok_.kind = Token::Ident;
            i_ = j;
            return;
        }
        switch (c) {
            case '+': tok_.kind = Token::Plus; break;
            case '-': tok_.kind = Token::Minus; break;
            case '*': tok_.kind = Token::Star; break;
            case '/': tok_.kind = Token::Slash; break;
            case '^': tok_.kind = Token::Caret; break;
            case '(': tok_.kind = Token::LParen; break;
            case ')': tok_.kind = Token::RParen; break;
            case ',': tok_.kind = Token::Comma; break;
            default:
                throw ConfigError(std::string("expression: unexpected character '") + c +
                                  "' at position " + std::to_string(i_));
        }
        ++i_;
    }

    const std::string& s_;
    size_t i_ = 0;
    Token tok_;
};

} // namespace

class ExprParser {
  public:
    explicit ExprParser(const std::string& text) : lex_(text) {}

    Expr run(const std::string& text) {
        Expr e;
        e.text_ = text;
        int root = parse_expr(e);
        if (lex_.peek().kind != Token::End)
            throw ConfigError("expression: trailing input at position " + std::to_string(lex_.peek().pos));
        (void)root; // root is always the last node pushed
        return e;
    }

  private:
    using Op = Expr::Op;

    int push(Expr& e, Expr::Node n) {
        e.nodes_.push_back(n);
        return static_cast<int>(e.nodes_.size()) - 1;
    }

    int parse_expr(Expr& e) {
        int lhs = parse_term(e);
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            bool add = lex_.next().kind == Token::Plus;
            int rhs = parse_term(e);
            lhs = push(e, {add ? Op::Add : Op::Sub, 0.0, lhs, rhs});
        }
        return lhs;
    }

    int parse_term(Expr& e) {
        int lhs = parse_unary(e);
        while (lex_.peek().kind == Token::Star || lex_.peek().kind == Token::Slash) {
            bool mul = lex_.next().kind == Token::Star;
            int rhs = parse_unary(e);
            lhs = push(e, {mul ? Op::Mul : Op::Div, 0.0, lhs, rhs});
        }
        return lhs;
    }

    int parse_unary(Expr& e) {
        if (lex_.peek().kind == Token::Minus) {
            lex_.next();
            int operand = parse_unary(e);
            return push(e, {Op::Neg, 0.0, operand, -1});
        }
        return parse_power(e);
    }

    int parse_power(Expr& e) {
        int base = parse_primary(e);
        if (lex_.peek().kind == Token::Caret) {
            lex_.next();
            int exponent = parse_unary(e); // right associative
            return push(e, {Op::Pow, 0.0, base, exponent});
        }
        return base;
    }

    int parse_primary(Expr& e) {
        Token t = lex_.next();
        switch (t.kind) {
            case Token::Number:
                return push(e, {Op::Const, t.value, -1, -1});
            case Token::LParen: {
                int inner = parse_expr(e);
                expect(Token::RParen, ")");
                return inner;
            }
            case Token::Ident: {
                if (t.ident == "x") return push(e, {Op::VarX, 0.0, -1, -1});
                if (t.ident == "y") return push(e, {Op::VarY, 0.0, -1, -1});
                if (t.ident == "t") return push(e, {Op::VarT, 0.0, -1, -1});
                if (t.ident == "eps") return push(e, {Op::VarEps, 0.0, -1, -1});
                if (t.ident == "exp" || t.ident == "sin") {
                    expect(Token::LParen, "(");
                    int arg = parse_expr(e);
                    expect(Token::RParen, ")");
                    return push(e, {t.ident == "exp" ? Op::Exp : Op::Sin, 0.0, arg, -1});
                }
                if (t.ident == "min" || t.ident == "max") {
                    expect(Token::LParen, "(");
                    int a = parse_expr(e);
                    expect(Token::Comma, ",");
                    int b = parse_expr(e);
                    expect(Token::RParen, ")");
                    return push(e, {t.ident == "min" ? Op::Min : Op::Max, 0.0, a, b});
                }
                throw ConfigError("expression: unknown identifier '" + t.ident + "' at position " +
                                  std::to_string(t.pos));
            }
            default:
                throw ConfigError("expression: unexpected token at position " + std::to_string(t.pos));
        }
    }

    void expect(Token::Kind k, const char* what) {
        Token t = lex_.next();
        if (t.kind != k)
            throw ConfigError(std::string("expression: expected '") + what + "' at position " +
                              std::to_string(t.pos));
    }

    Lexer lex_;
};

Expr Expr::parse(const std::string& text) {
    ExprParser parser(text);
    Expr e = parser.run(text);
    if (e.nodes_.empty()) throw ConfigError("expression: empty input");
    return e;
}

double Expr::eval(double x, double y, double t, double eps) const {
    if (nodes_.empty()) return 0.0;
    // Nodes are in evaluation order (children precede parents).
    thread_local std::vector<double> stack;
    stack.resize(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        double v = 0.0;
        switch (n.op) {
            case Op::Const: v = n.value; break;
            case Op::VarX: v = x; break;
            case Op::VarY: v = y; break;
            case Op::VarT: v = t; break;
            case Op::VarEps: v = eps; break;
            case Op::Add: v = stack[n.lhs] + stack[n.rhs]; break;
            case Op::Sub: v = stack[n.lhs] - stack[n.rhs]; break;
            case Op::Mul: v = stack[n.lhs] * stack[n.rhs]; break;
            case Op::Div: v = stack[n.lhs] / stack[n.rhs]; break;
            case Op::Pow: v = std::pow(stack[n.lhs], stack[n.rhs]); break;
            case Op::Neg: v = -stack[n.lhs]; break;
            case Op::Exp: v = std::exp(stack[n.lhs]); break;
            case Op::Sin: v = std::sin(stack[n.lhs]); break;
            case Op::Min: v = std::min(stack[n.lhs], stack[n.rhs]); break;
            case Op::Max: v = std::max(stack[n.lhs], stack[n.rhs]); break;
        }
        stack[i] = v;
    }
    return stack.back();
}

bool Expr::is_constant() const {
    for (const Node& n : nodes_)
        if (n.op == Op::VarX || n.op == Op::VarY || n.op == Op::VarT || n.op == Op::VarEps) return false;
    return true;
}

} // namespace fnfb
