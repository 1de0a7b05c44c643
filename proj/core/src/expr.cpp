#include "ivsolve/expr.hpp"

#include <cmath>

#include "ivsolve/rounding.hpp"

namespace ivsolve {

namespace {

bool exact_add(double a, double b, double& out) {
    double s = a + b;
    if (!std::isfinite(s)) return false;
    double bv = s - a;
    if ((a - (s - bv)) + (b - bv) != 0.0) return false;
    out = s;
    return true;
}

bool exact_mul(double a, double b, double& out) {
    double p = a * b;
    if (!std::isfinite(p)) return false;
    if (std::fma(a, b, -p) != 0.0) return false;
    out = p;
    return true;
}

bool exact_div(double a, double b, double& out) {
    if (b == 0.0) return false;
    double q = a / b;
    if (!std::isfinite(q)) return false;
    if (std::fma(q, b, -a) != 0.0) return false;
    out = q;
    return true;
}

bool exact_pow(double x, unsigned k, double& out) {
    double acc = 1.0;
    bool first = true;
    double base = x;
    for (unsigned b = k; b != 0; b >>= 1) {
        if (b & 1u) {
            if (first) {
                acc = base;
                first = false;
            } else if (!exact_mul(acc, base, acc)) {
                return false;
            }
        }
        if (b > 1 && !exact_mul(base, base, base)) return false;
    }
    out = k == 0 ? 1.0 : acc;
    return true;
}

} // namespace

ExprPtr make_node(ExprKind k, ExprPtr l, ExprPtr r) {
    auto e = std::shared_ptr<Expr>(new Expr(k));
    e->left = std::move(l);
    e->right = std::move(r);
    return e;
}

ExprPtr Expr::constant(double v) {
    auto e = std::shared_ptr<Expr>(new Expr(ExprKind::constant));
    e->value = v;
    return e;
}

ExprPtr Expr::state(int i) {
    auto e = std::shared_ptr<Expr>(new Expr(ExprKind::state_var));
    e->index = i;
    return e;
}

ExprPtr Expr::param(int i) {
    auto e = std::shared_ptr<Expr>(new Expr(ExprKind::param_var));
    e->index = i;
    return e;
}

ExprPtr Expr::make_neg(ExprPtr e) {
    if (e->kind == ExprKind::constant) return constant(-e->value);
    return make_node(ExprKind::neg, std::move(e), nullptr);
}

ExprPtr Expr::make_add(ExprPtr l, ExprPtr r) {
    double folded;
    if (l->kind == ExprKind::constant && r->kind == ExprKind::constant &&
        exact_add(l->value, r->value, folded))
        return constant(folded);
    return make_node(ExprKind::add, std::move(l), std::move(r));
}

ExprPtr Expr::make_sub(ExprPtr l, ExprPtr r) {
    double folded;
    if (l->kind == ExprKind::constant && r->kind == ExprKind::constant &&
        exact_add(l->value, -r->value, folded))
        return constant(folded);
    return make_node(ExprKind::sub, std::move(l), std::move(r));
}

ExprPtr Expr::make_mul(ExprPtr l, ExprPtr r) {
    double folded;
    if (l->kind == ExprKind::constant && r->kind == ExprKind::constant &&
        exact_mul(l->value, r->value, folded))
        return constant(folded);
    return make_node(ExprKind::mul, std::move(l), std::move(r));
}

ExprPtr Expr::make_div(ExprPtr l, ExprPtr r) {
    double folded;
    if (l->kind == ExprKind::constant && r->kind == ExprKind::constant &&
        exact_div(l->value, r->value, folded))
        return constant(folded);
    return make_node(ExprKind::div, std::move(l), std::move(r));
}

ExprPtr Expr::make_pow(ExprPtr e, unsigned k) {
    double folded;
    if (e->kind == ExprKind::constant && exact_pow(e->value, k, folded)) return constant(folded);
    auto node = std::shared_ptr<Expr>(new Expr(ExprKind::int_pow));
    node->exponent = k;
    node->left = std::move(e);
    return node;
}

double eval_real(const ExprPtr& e, const std::vector<double>& x, const std::vector<double>& u) {
    switch (e->kind) {
        case ExprKind::constant: return e->value;
        case ExprKind::state_var: return x[static_cast<std::size_t>(e->index)];
        case ExprKind::param_var: return u[static_cast<std::size_t>(e->index)];
        case ExprKind::neg: return -eval_real(e->left, x, u);
        case ExprKind::add: return eval_real(e->left, x, u) + eval_real(e->right, x, u);
        case ExprKind::sub: return eval_real(e->left, x, u) - eval_real(e->right, x, u);
        case ExprKind::mul: return eval_real(e->left, x, u) * eval_real(e->right, x, u);
        case ExprKind::div: {
            double num = eval_real(e->left, x, u);
            double den = eval_real(e->right, x, u);
            if (den == 0.0) throw DivByZeroError();
            return num / den;
        }
        case ExprKind::int_pow: {
            double base = eval_real(e->left, x, u);
            double acc = 1.0;
            for (unsigned b = e->exponent; b != 0; b >>= 1) {
                if (b & 1u) acc *= base;
                if (b > 1) base *= base;
            }
            return acc;
        }
    }
    throw Error("corrupt expression node");
}

Interval eval_interval(const ExprPtr& e, const Box& X, const Box& U, OpCounters& c) {
    switch (e->kind) {
        case ExprKind::constant: return Interval(e->value);
        case ExprKind::state_var: return X[static_cast<std::size_t>(e->index)];
        case ExprKind::param_var: return U[static_cast<std::size_t>(e->index)];
        case ExprKind::neg: return neg(eval_interval(e->left, X, U, c), c);
        case ExprKind::add:
            return add(eval_interval(e->left, X, U, c), eval_interval(e->right, X, U, c), c);
        case ExprKind::sub:
            return sub(eval_interval(e->left, X, U, c), eval_interval(e->right, X, U, c), c);
        case ExprKind::mul:
            return mul(eval_interval(e->left, X, U, c), eval_interval(e->right, X, U, c), c);
        case ExprKind::div: {
            Interval num = eval_interval(e->left, X, U, c);
            Interval den = eval_interval(e->right, X, U, c);
            if (!den.is_empty() && den.contains_zero()) {
                c.ext_div_hulls += 1;
                return extended_div(num, den, c).hull();
            }
            if (den.is_empty()) return Interval::empty();
            return div(num, den, c);
        }
        case ExprKind::int_pow: return int_pow(eval_interval(e->left, X, U, c), e->exponent, c);
    }
    throw Error("corrupt expression node");
}

int op_count(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::constant:
        case ExprKind::state_var:
        case ExprKind::param_var: return 0;
        case ExprKind::neg: return 1 + op_count(e->left);
        case ExprKind::add:
        case ExprKind::sub:
        case ExprKind::mul:
        case ExprKind::div: return 1 + op_count(e->left) + op_count(e->right);
        case ExprKind::int_pow: {
            int own = 0;
            for (unsigned k = e->exponent; k > 1; k = (k + 1) / 2) ++own; // ceil(log2 k)
            return own + op_count(e->left);
        }
    }
    return 0;
}

namespace {

// Identity-simplifying constructors used when building derivatives. They keep
// derivative trees of sparse systems from drowning in 0* and +0 nodes.
ExprPtr s_neg(ExprPtr e) {
    if (e->kind == ExprKind::neg) return e->left;
    return Expr::make_neg(std::move(e));
}

ExprPtr s_add(ExprPtr l, ExprPtr r) {
    if (l->is_constant(0.0)) return r;
    if (r->is_constant(0.0)) return l;
    return Expr::make_add(std::move(l), std::move(r));
}

ExprPtr s_sub(ExprPtr l, ExprPtr r) {
    if (r->is_constant(0.0)) return l;
    if (l->is_constant(0.0)) return s_neg(std::move(r));
    return Expr::make_sub(std::move(l), std::move(r));
}

ExprPtr s_mul(ExprPtr l, ExprPtr r) {
    if (l->is_constant(0.0) || r->is_constant(0.0)) return Expr::constant(0.0);
    if (l->is_constant(1.0)) return r;
    if (r->is_constant(1.0)) return l;
    return Expr::make_mul(std::move(l), std::move(r));
}

ExprPtr s_div(ExprPtr l, ExprPtr r) {
    if (l->is_constant(0.0)) return Expr::constant(0.0);
    if (r->is_constant(1.0)) return l;
    return Expr::make_div(std::move(l), std::move(r));
}

ExprPtr s_pow(ExprPtr e, unsigned k) {
    if (k == 0) return Expr::constant(1.0);
    if (k == 1) return e;
    return Expr::make_pow(std::move(e), k);
}

} // namespace

ExprPtr derivative(const ExprPtr& e, int state_index) {
    switch (e->kind) {
        case ExprKind::constant:
        case ExprKind::param_var: return Expr::constant(0.0);
        case ExprKind::state_var: return Expr::constant(e->index == state_index ? 1.0 : 0.0);
        case ExprKind::neg: return s_neg(derivative(e->left, state_index));
        case ExprKind::add:
            return s_add(derivative(e->left, state_index), derivative(e->right, state_index));
        case ExprKind::sub:
            return s_sub(derivative(e->left, state_index), derivative(e->right, state_index));
        case ExprKind::mul:
            return s_add(s_mul(derivative(e->left, state_index), e->right),
                         s_mul(e->left, derivative(e->right, state_index)));
        case ExprKind::div:
            return s_div(s_sub(s_mul(derivative(e->left, state_index), e->right),
                               s_mul(e->left, derivative(e->right, state_index))),
                         s_pow(e->right, 2));
        case ExprKind::int_pow: {
            if (e->exponent == 0) return Expr::constant(0.0);
            ExprPtr inner = derivative(e->left, state_index);
            ExprPtr term = s_mul(Expr::constant(static_cast<double>(e->exponent)),
                                 s_pow(e->left, e->exponent - 1));
            return s_mul(std::move(term), std::move(inner));
        }
    }
    throw Error("corrupt expression node");
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::constant:
            return a->value == b->value ||
                   (std::isnan(a->value) && std::isnan(b->value)); // NaN constants never occur
        case ExprKind::state_var:
        case ExprKind::param_var: return a->index == b->index;
        case ExprKind::neg: return structurally_equal(a->left, b->left);
        case ExprKind::int_pow:
            return a->exponent == b->exponent && structurally_equal(a->left, b->left);
        default:
            return structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
    }
}

void validate_expr(const ExprPtr& e, int n_states, int n_params) {
    if (!e) throw ArityError("null expression node");
    switch (e->kind) {
        case ExprKind::constant:
            if (e->left || e->right) throw ArityError("constant node must be a leaf");
            return;
        case ExprKind::state_var:
            if (e->left || e->right) throw ArityError("variable node must be a leaf");
            if (e->index < 0 || e->index >= n_states)
                throw DimensionMismatchError("state variable index out of range");
            return;
        case ExprKind::param_var:
            if (e->left || e->right) throw ArityError("variable node must be a leaf");
            if (e->index < 0 || e->index >= n_params)
                throw DimensionMismatchError("parameter index out of range");
            return;
        case ExprKind::neg:
        case ExprKind::int_pow:
            if (!e->left || e->right) throw ArityError("unary node must have exactly one child");
            validate_expr(e->left, n_states, n_params);
            return;
        case ExprKind::add:
        case ExprKind::sub:
        case ExprKind::mul:
        case ExprKind::div:
            if (!e->left || !e->right) throw ArityError("binary node must have two children");
            validate_expr(e->left, n_states, n_params);
            validate_expr(e->right, n_states, n_params);
            return;
    }
    throw Error("corrupt expression node");
}

} // namespace ivsolve
