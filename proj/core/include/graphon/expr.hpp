#pragma once

#include <memory>
#include <string>

#include "graphon/errors.hpp"

namespace graphon {

// A small arithmetic expression in the variables x and y, for user-defined
// kernels given as strings in config files.
//
// Grammar: + - * / ^ (right assoc), unary minus, parentheses, numeric
// literals, and the calls exp, log, sqrt, abs, min, max. Example:
//   "0.1 + 0.8*exp(-(x-y)^2)"
class Expr {
public:
    static Expr parse(const std::string& source);  // throws ConfigError

    double eval(double x, double y) const;
    const std::string& source() const { return source_; }

    struct Node;  // exposed for the parser implementation only

private:
    Expr(std::shared_ptr<const Node> root, std::string source);

    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace graphon
