#include "vofrac/expression.hpp"

#include <cctype>
#include <cmath>
#include <utility>
#include <vector>

#include "vofrac/errors.hpp"

namespace vofrac {

enum class NodeKind { number, var_t, var_x, add, sub, mul, div, pow, neg, call };
enum class Func { exp, sin, cos, ln, abs };

struct Expression::Node {
    NodeKind kind;
    double value = 0.0;  // number
    Func func = Func::exp;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(NodeKind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = NodeKind::number;
    n->value = v;
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        NodePtr root = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) {
            fail({"operator", "end of input"});
        }
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool eof() {
        skip_ws();
        return pos_ >= src_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        skip_ws();
        std::string msg = "parse error at offset " + std::to_string(pos_) +
                          ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        if (pos_ >= src_.size()) {
            msg += ", found end of input";
        } else {
            msg += ", found '";
            msg += src_[pos_];
            msg += '\'';
        }
        throw ParseError(pos_, std::move(expected), msg);
    }

    NodePtr parse_expr() {
        // Optional leading sign so arguments like exp(-t) work.
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = src_[pos_] == '-';
            ++pos_;
        }
        NodePtr lhs = parse_term();
        if (negate) lhs = make_node(NodeKind::neg, lhs);
        for (;;) {
            if (consume('+')) {
                lhs = make_node(NodeKind::add, lhs, parse_term());
            } else if (consume('-')) {
                lhs = make_node(NodeKind::sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (consume('*')) {
                lhs = make_node(NodeKind::mul, lhs, parse_factor());
            } else if (consume('/')) {
                lhs = make_node(NodeKind::div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        NodePtr base = parse_base();
        if (consume('^')) {
            // Right-associative.
            return make_node(NodeKind::pow, base, parse_factor());
        }
        return base;
    }

    NodePtr parse_base() {
        if (eof()) fail({"number", "'t'", "'x'", "function", "'('"});
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return parse_name();
        }
        if (consume('(')) {
            NodePtr inner = parse_expr();
            if (!consume(')')) fail({"')'"});
            return inner;
        }
        fail({"number", "'t'", "'x'", "function", "'('"});
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    ++pos_;
                }
            } else {
                pos_ = mark;  // 'e' belonged to something else; reject below
            }
        }
        const std::string token(src_.substr(start, pos_ - start));
        if (token == "." || token.empty()) {
            pos_ = start;
            fail({"number"});
        }
        try {
            return make_number(std::stod(token));
        } catch (const std::exception&) {
            pos_ = start;
            fail({"number"});
        }
    }

    NodePtr parse_name() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") return make_node(NodeKind::var_t);
        if (name == "x") return make_node(NodeKind::var_x);
        Func f;
        if (name == "exp") f = Func::exp;
        else if (name == "sin") f = Func::sin;
        else if (name == "cos") f = Func::cos;
        else if (name == "ln") f = Func::ln;
        else if (name == "abs") f = Func::abs;
        else {
            pos_ = start;
            fail({"'t'", "'x'", "'exp'", "'sin'", "'cos'", "'ln'", "'abs'"});
        }
        if (!consume('(')) fail({"'('"});
        NodePtr arg = parse_expr();
        if (!consume(')')) fail({"')'"});
        auto n = std::make_shared<Expression::Node>();
        n->kind = NodeKind::call;
        n->func = f;
        n->lhs = std::move(arg);
        return n;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, const EvalVars& vars) {
    switch (n.kind) {
        case NodeKind::number:
            return n.value;
        case NodeKind::var_t:
            if (!vars.t) throw DomainError("expression references unbound variable t");
            return *vars.t;
        case NodeKind::var_x:
            if (!vars.x) throw DomainError("expression references unbound variable x");
            return *vars.x;
        case NodeKind::add:
            return eval_node(*n.lhs, vars) + eval_node(*n.rhs, vars);
        case NodeKind::sub:
            return eval_node(*n.lhs, vars) - eval_node(*n.rhs, vars);
        case NodeKind::mul:
            return eval_node(*n.lhs, vars) * eval_node(*n.rhs, vars);
        case NodeKind::div:
            return eval_node(*n.lhs, vars) / eval_node(*n.rhs, vars);
        case NodeKind::pow:
            return std::pow(eval_node(*n.lhs, vars), eval_node(*n.rhs, vars));
        case NodeKind::neg:
            return -eval_node(*n.lhs, vars);
        case NodeKind::call: {
            const double a = eval_node(*n.lhs, vars);
            switch (n.func) {
                case Func::exp: return std::exp(a);
                case Func::sin: return std::sin(a);
                case Func::cos: return std::cos(a);
                case Func::abs: return std::abs(a);
                case Func::ln:
                    if (a <= 0.0) {
                        throw DomainError("ln of non-positive argument " +
                                          std::to_string(a));
                    }
                    return std::log(a);
            }
            break;
        }
    }
    throw DomainError("corrupt expression node");
}

bool references(const Expression::Node& n, NodeKind var) {
    if (n.kind == var) return true;
    if (n.lhs && references(*n.lhs, var)) return true;
    if (n.rhs && references(*n.rhs, var)) return true;
    return false;
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expression Expression::parse(std::string_view src) {
    Parser p(src);
    return Expression(p.run(), std::string(src));
}

Expression Expression::constant(double value) {
    return Expression(make_number(value), std::to_string(value));
}

Expression Expression::affine(double a0, double a1, const Expression& e) {
    NodePtr scaled = make_node(NodeKind::mul, make_number(a1), e.root_);
    NodePtr sum = make_node(NodeKind::add, make_number(a0), scaled);
    return Expression(sum, std::to_string(a0) + " + " + std::to_string(a1) +
                               "*(" + e.text_ + ")");
}

double Expression::eval(const EvalVars& vars) const {
    return eval_node(*root_, vars);
}

bool Expression::references_t() const { return references(*root_, NodeKind::var_t); }
bool Expression::references_x() const { return references(*root_, NodeKind::var_x); }

}  // namespace vofrac
