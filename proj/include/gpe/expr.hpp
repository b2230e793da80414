#pragma once

#include "gpe/linalg.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace gpe {

/// Coefficient expression in the variables x, y (and z).
///
/// Grammar (whitespace ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?
///     primary := number | 'x' | 'y' | 'z' | 'pi'
///              | ('sqrt' | 'exp' | 'abs' | 'log') '(' expr ')'
///              | '|' expr '|' | '(' expr ')'
///
/// `|x|^2` and `abs(x)^2` are the same thing. Parsing errors throw
/// `Error{Errc::config}` with the column of the offending token.
class Expr {
public:
    struct Node;

    Expr();  // the constant 0
    static Expr parse(std::string_view text);
    static Expr constant(double value);

    double operator()(const Vec& x) const;
    const std::string& text() const { return text_; }
    bool is_constant_zero() const;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace gpe
