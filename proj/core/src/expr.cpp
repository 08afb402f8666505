#include "graphon/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace graphon {

struct Expr::Node {
    enum class Kind { kConst, kVarX, kVarY, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
    Kind kind;
    double value = 0.0;          // kConst
    std::string call;            // kCall: exp log sqrt abs min max
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->args = std::move(args);
    return n;
}

NodePtr make_call(std::string fn, std::vector<NodePtr> args) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kCall;
    n->call = std::move(fn);
    n->args = std::move(args);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing characters");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        throw ConfigError("expr: " + what + " at position " + std::to_string(pos_) +
                          " in \"" + src_ + "\"");
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+')) lhs = make(Node::Kind::kAdd, {lhs, term()});
            else if (eat('-')) lhs = make(Node::Kind::kSub, {lhs, term()});
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (eat('*')) lhs = make(Node::Kind::kMul, {lhs, factor()});
            else if (eat('/')) lhs = make(Node::Kind::kDiv, {lhs, factor()});
            else return lhs;
        }
    }

    // '^' is right associative and binds tighter than unary '-', so
    // -x^2 means -(x^2) and 2^-2 means 2^(-2), as in ordinary notation.
    NodePtr factor() {
        if (eat('-')) return make(Node::Kind::kNeg, {factor()});
        NodePtr base = primary();
        if (eat('^')) return make(Node::Kind::kPow, {base, factor()});
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        if (eat('(')) {
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail("unexpected character");
    }

    NodePtr number() {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::kConst;
        n->value = v;
        return n;
    }

    NodePtr name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isalnum(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::string id = src_.substr(start, pos_ - start);
        if (id == "x") return make(Node::Kind::kVarX);
        if (id == "y") return make(Node::Kind::kVarY);
        if (id == "pi") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::kConst;
            n->value = 3.14159265358979323846;
            return n;
        }
        static const char* kUnary[] = {"exp", "log", "sqrt", "abs"};
        static const char* kBinary[] = {"min", "max"};
        for (const char* f : kUnary)
            if (id == f) {
                if (!eat('(')) fail("expected '(' after " + id);
                NodePtr a = expr();
                if (!eat(')')) fail("expected ')'");
                return make_call(id, {a});
            }
        for (const char* f : kBinary)
            if (id == f) {
                if (!eat('(')) fail("expected '(' after " + id);
                NodePtr a = expr();
                if (!eat(',')) fail("expected ','");
                NodePtr b = expr();
                if (!eat(')')) fail("expected ')'");
                return make_call(id, {a, b});
            }
        fail("unknown identifier \"" + id + "\"");
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, double x, double y) {
    switch (n.kind) {
        case Node::Kind::kConst: return n.value;
        case Node::Kind::kVarX: return x;
        case Node::Kind::kVarY: return y;
        case Node::Kind::kNeg: return -eval_node(*n.args[0], x, y);
        case Node::Kind::kAdd: return eval_node(*n.args[0], x, y) + eval_node(*n.args[1], x, y);
        case Node::Kind::kSub: return eval_node(*n.args[0], x, y) - eval_node(*n.args[1], x, y);
        case Node::Kind::kMul: return eval_node(*n.args[0], x, y) * eval_node(*n.args[1], x, y);
        case Node::Kind::kDiv: return eval_node(*n.args[0], x, y) / eval_node(*n.args[1], x, y);
        case Node::Kind::kPow:
            return std::pow(eval_node(*n.args[0], x, y), eval_node(*n.args[1], x, y));
        case Node::Kind::kCall: {
            const double a = eval_node(*n.args[0], x, y);
            if (n.call == "exp") return std::exp(a);
            if (n.call == "log") return std::log(a);
            if (n.call == "sqrt") return std::sqrt(a);
            if (n.call == "abs") return std::abs(a);
            const double b = eval_node(*n.args[1], x, y);
            return n.call == "min" ? std::min(a, b) : std::max(a, b);
        }
    }
    return 0.0;  // unreachable
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expr Expr::parse(const std::string& source) {
    Parser p(source);
    return Expr(p.run(), source);
}

double Expr::eval(double x, double y) const { return eval_node(*root_, x, y); }

}  // namespace graphon
