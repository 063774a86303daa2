#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fnfb {

// Arithmetic expressions over the variables x, y, t, eps.
// Grammar: + - * / ^ (right assoc), unary minus, exp, sin, min, max,
// numeric literals and parentheses. Parsed once, evaluated many times.
class Expr {
  public:
    Expr() = default; // constant 0

    static Expr parse(const std::string& text);

    double eval(double x, double y, double t, double eps = 0.0) const;

    bool is_constant() const;
    const std::string& text() const { return text_; }

  private:
    enum class Op : unsigned char {
        Const, VarX, VarY, VarT, VarEps,
        Add, Sub, Mul, Div, Pow, Neg,
        Exp, Sin, Min, Max
    };
    struct Node {
        Op op;
        double value = 0.0; // Const
        int lhs = -1;
        int rhs = -1;
    };

    std::vector<Node> nodes_; // last node is the root
    std::string text_;

    friend class ExprParser;
};

} // namespace fnfb
