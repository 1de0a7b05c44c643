#pragma once

#include <string>

#include "ivsolve/model.hpp"

namespace ivsolve {

// Text model format:
//
//   states x1..x2;
//   params u1..u3;            # omitted for parameter-free systems
//   eq: 0.5 + u1 / (1 + x2^10) - u3 * x1;
//   eq: 0.5 + u2 / (1 + x1^10) - u3 * x2;
//   X0: [0, 10] x [0, 10];
//   U: [3.8, 4.2] x [3.8, 4.2] x [0.95, 1.05];
//
// Operators + - * / ^ (nonnegative integer exponent), parentheses, decimal
// literals; '#' starts a comment. print_system emits the canonical form and
// parse(print(m)) is structurally equal to m.
SystemModel parse_system(const std::string& text, const std::string& name = "model");

std::string print_system(const SystemModel& m);
std::string print_expr(const ExprPtr& e);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

} // namespace ivsolve
