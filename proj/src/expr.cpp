#include "gpe/expr.hpp"

#include "gpe/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gpe {

struct Expr::Node {
    enum class Op { number, var, neg, add, sub, mul, div, pow, sqrt, exp, abs, log };
    Op op = Op::number;
    double value = 0.0;
    int var = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Op = Expr::Node::Op;

NodePtr make_leaf(Op op, double value, int var = 0) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->value = value;
    n->var = var;
    return n;
}

NodePtr make_node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse_all() {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "expression '" << s_ << "' column " << pos_ + 1 << ": " << msg;
        throw Error(Errc::config, os.str());
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        auto n = term();
        for (;;) {
            if (accept('+')) n = make_node(Op::add, n, term());
            else if (accept('-')) n = make_node(Op::sub, n, term());
            else return n;
        }
    }

    NodePtr term() {
        auto n = unary();
        for (;;) {
            if (accept('*')) n = make_node(Op::mul, n, unary());
            else if (accept('/')) n = make_node(Op::div, n, unary());
            else return n;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_node(Op::neg, unary());
        return power();
    }

    NodePtr power() {
        auto n = primary();
        if (accept('^')) n = make_node(Op::pow, n, unary());
        return n;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto n = expr();
            expect(')');
            return n;
        }
        if (c == '|') {
            ++pos_;
            auto n = expr();
            expect('|');
            return make_node(Op::abs, n);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const char* first = s_.data() + pos_;
            auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
            if (ec != std::errc()) fail("bad number");
            pos_ += static_cast<std::size_t>(ptr - first);
            return make_leaf(Op::number, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view word = s_.substr(start, pos_ - start);
            if (word == "x") return make_leaf(Op::var, 0.0, 0);
            if (word == "y") return make_leaf(Op::var, 0.0, 1);
            if (word == "z") return make_leaf(Op::var, 0.0, 2);
            if (word == "pi") return make_leaf(Op::number, std::numbers::pi);
            Op op;
            if (word == "sqrt") op = Op::sqrt;
            else if (word == "exp") op = Op::exp;
            else if (word == "abs") op = Op::abs;
            else if (word == "log") op = Op::log;
            else {
                pos_ = start;
                fail("unknown identifier '" + std::string(word) + "'");
            }
            expect('(');
            auto arg = expr();
            expect(')');
            return make_node(op, arg);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

double eval_node(const Expr::Node& n, const Vec& x) {
    switch (n.op) {
        case Op::number: return n.value;
        case Op::var:
            if (n.var >= x.size())
                throw Error(Errc::dimension_mismatch, "expression uses a coordinate beyond the point dimension");
            return x[n.var];
        case Op::neg: return -eval_node(*n.lhs, x);
        case Op::add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case Op::sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
        case Op::mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case Op::div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
        case Op::pow: return std::pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
        case Op::sqrt: return std::sqrt(eval_node(*n.lhs, x));
        case Op::exp: return std::exp(eval_node(*n.lhs, x));
        case Op::abs: return std::abs(eval_node(*n.lhs, x));
        case Op::log: return std::log(eval_node(*n.lhs, x));
    }
    return 0.0;
}

}  // namespace

Expr::Expr() : root_(make_leaf(Op::number, 0.0)), text_("0") {}

Expr Expr::parse(std::string_view text) {
    Expr e;
    e.root_ = Parser(text).parse_all();
    e.text_ = std::string(text);
    return e;
}

Expr Expr::constant(double value) {
    Expr e;
    e.root_ = make_leaf(Op::number, value);
    std::ostringstream os;
    os.precision(17);
    os << value;
    e.text_ = os.str();
    return e;
}

double Expr::operator()(const Vec& x) const { return eval_node(*root_, x); }

bool Expr::is_constant_zero() const { return root_->op == Op::number && root_->value == 0.0; }

}  // namespace gpe
