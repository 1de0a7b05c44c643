#pragma once

#include <memory>
#include <vector>

#include "ivsolve/box.hpp"
#include "ivsolve/interval.hpp"

namespace ivsolve {

struct DivByZeroError : Error {
    DivByZeroError() : Error("real evaluation hit a zero denominator") {}
};

enum class ExprKind { constant, state_var, param_var, neg, add, sub, mul, div, int_pow };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree over state variables x_i and parameters u_j.
// Factories fold operations whose children are both literals, and only when
// the double result is exact, so folding never changes evaluation semantics.
// No other simplification is applied on construction.
class Expr {
public:
    ExprKind kind;
    double value = 0.0;    // constant
    int index = 0;         // state_var / param_var
    unsigned exponent = 0; // int_pow
    ExprPtr left;          // unary operand or left operand
    ExprPtr right;

    static ExprPtr constant(double v);
    static ExprPtr state(int i);
    static ExprPtr param(int i);
    static ExprPtr make_neg(ExprPtr e);
    static ExprPtr make_add(ExprPtr l, ExprPtr r);
    static ExprPtr make_sub(ExprPtr l, ExprPtr r);
    static ExprPtr make_mul(ExprPtr l, ExprPtr r);
    static ExprPtr make_div(ExprPtr l, ExprPtr r);
    static ExprPtr make_pow(ExprPtr e, unsigned k);

    bool is_leaf() const {
        return kind == ExprKind::constant || kind == ExprKind::state_var ||
               kind == ExprKind::param_var;
    }
    bool is_constant(double v) const { return kind == ExprKind::constant && value == v; }

private:
    explicit Expr(ExprKind k) : kind(k) {}
    friend ExprPtr make_node(ExprKind, ExprPtr, ExprPtr);
};

double eval_real(const ExprPtr& e, const std::vector<double>& x, const std::vector<double>& u);

// Natural interval extension: the tree evaluated in order with interval
// operations. A division whose denominator straddles zero hulls the
// extended-division pieces and bumps the ext_div_hulls counter.
Interval eval_interval(const ExprPtr& e, const Box& X, const Box& U, OpCounters& c);

// Number of elementary operations charged by the cost model: 1 per non-leaf
// node, except int_pow which counts ceil(log2 k) (its repeated-squaring
// evaluation), 0 for exponents 0 and 1.
int op_count(const ExprPtr& e);

// Symbolic partial derivative with respect to state variable state_index.
// Built with identity-simplifying constructors (e*1 -> e, e+0 -> e, ...), so
// derivatives of sparse systems stay small.
ExprPtr derivative(const ExprPtr& e, int state_index);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Checks arity and variable-index bounds; throws ArityError or
// DimensionMismatchError.
void validate_expr(const ExprPtr& e, int n_states, int n_params);

} // namespace ivsolve
