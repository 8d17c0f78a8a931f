#include "ks/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace ks {

struct Expression::Node {
    enum class Kind { Number, Coord, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
    Kind kind;
    double number = 0.0;
    int coord = 0;  // zero-based axis for Kind::Coord
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (eat('+')) lhs = make(Node::Kind::Add, lhs, term());
            else if (eat('-')) lhs = make(Node::Kind::Sub, lhs, term());
            else return lhs;
        }
    }
    NodePtr term() {
        NodePtr lhs = factor();
        while (true) {
            if (eat('*')) lhs = make(Node::Kind::Mul, lhs, factor());
            else if (eat('/')) lhs = make(Node::Kind::Div, lhs, factor());
            else return lhs;
        }
    }
    NodePtr factor() {
        NodePtr base = unary();
        if (eat('^')) return make(Node::Kind::Pow, base, factor());  // right-associative
        return base;
    }
    NodePtr unary() {
        if (eat('-')) return make(Node::Kind::Neg, unary());
        return primary();
    }
    NodePtr primary() {
        skip();
        if (pos >= text.size()) throw BadExpressionError("unexpected end of expression");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            double v = std::strtod(text.c_str() + pos, &end);
            pos = std::size_t(end - text.c_str());
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->number = v;
            return n;
        }
        if (c == '(') {
            ++pos;
            NodePtr inner = expr();
            if (!eat(')')) throw BadExpressionError("missing ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "sin" || name == "cos" || name == "exp") {
                if (!eat('(')) throw BadExpressionError(name + " requires parentheses");
                NodePtr arg = expr();
                if (!eat(')')) throw BadExpressionError("missing ')'");
                Node::Kind k = name == "sin"   ? Node::Kind::Sin
                               : name == "cos" ? Node::Kind::Cos
                                               : Node::Kind::Exp;
                return make(k, arg);
            }
            if (name.size() >= 2 && name[0] == 'x') {
                int axis = std::atoi(name.c_str() + 1);
                if (axis >= 1) {
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Kind::Coord;
                    n->coord = axis - 1;
                    return n;
                }
            }
            throw BadExpressionError("unknown identifier '" + name + "'");
        }
        throw BadExpressionError(std::string("unexpected character '") + c + "'");
    }
};

double eval_node(const Node& n, const std::vector<double>& coords) {
    switch (n.kind) {
        case Node::Kind::Number: return n.number;
        case Node::Kind::Coord:
            if (n.coord >= int(coords.size()))
                throw BadExpressionError("coordinate x" + std::to_string(n.coord + 1) +
                                         " exceeds the space dimension");
            return coords[n.coord];
        case Node::Kind::Add: return eval_node(*n.a, coords) + eval_node(*n.b, coords);
        case Node::Kind::Sub: return eval_node(*n.a, coords) - eval_node(*n.b, coords);
        case Node::Kind::Mul: return eval_node(*n.a, coords) * eval_node(*n.b, coords);
        case Node::Kind::Div: return eval_node(*n.a, coords) / eval_node(*n.b, coords);
        case Node::Kind::Pow: return std::pow(eval_node(*n.a, coords), eval_node(*n.b, coords));
        case Node::Kind::Neg: return -eval_node(*n.a, coords);
        case Node::Kind::Sin: return std::sin(eval_node(*n.a, coords));
        case Node::Kind::Cos: return std::cos(eval_node(*n.a, coords));
        case Node::Kind::Exp: return std::exp(eval_node(*n.a, coords));
    }
    throw BadExpressionError("corrupt expression tree");
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Parser p{text};
    Expression e;
    e.root_ = p.expr();
    p.skip();
    if (p.pos != text.size()) throw BadExpressionError("trailing input after expression");
    return e;
}

double Expression::eval(const std::vector<double>& coords) const {
    return eval_node(*root_, coords);
}

}  // namespace ks
