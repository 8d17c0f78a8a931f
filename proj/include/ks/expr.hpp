#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ks/errors.hpp"

namespace ks {

/// Tiny closed-form expression grammar for function samplers:
/// +, -, *, /, ^, sin, cos, exp, numeric literals, coordinates x1..xD.
class Expression {
public:
    static Expression parse(const std::string& text);
    double eval(const std::vector<double>& coords) const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
};

}  // namespace ks
