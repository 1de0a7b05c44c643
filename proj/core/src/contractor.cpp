#include "ivsolve/contractor.hpp"

#include <unordered_map>

#include "ivsolve/rounding.hpp"

namespace ivsolve {

namespace {

using ForwardValues = std::unordered_map<const Expr*, Interval>;

Interval forward(const ExprPtr& e, const Box& x, const Box& u, OpCounters& c, ForwardValues& vals) {
    Interval v;
    switch (e->kind) {
        case ExprKind::constant: v = Interval(e->value); break;
        case ExprKind::state_var: v = x[static_cast<std::size_t>(e->index)]; break;
        case ExprKind::param_var: v = u[static_cast<std::size_t>(e->index)]; break;
        case ExprKind::neg: v = neg(forward(e->left, x, u, c, vals), c); break;
        case ExprKind::add:
            v = add(forward(e->left, x, u, c, vals), forward(e->right, x, u, c, vals), c);
            break;
        case ExprKind::sub:
            v = sub(forward(e->left, x, u, c, vals), forward(e->right, x, u, c, vals), c);
            break;
        case ExprKind::mul:
            v = mul(forward(e->left, x, u, c, vals), forward(e->right, x, u, c, vals), c);
            break;
        case ExprKind::div: {
            Interval num = forward(e->left, x, u, c, vals);
            Interval den = forward(e->right, x, u, c, vals);
            if (!den.is_empty() && den.contains_zero()) {
                c.ext_div_hulls += 1;
                v = extended_div(num, den, c).hull();
            } else if (den.is_empty()) {
                v = Interval::empty();
            } else {
                v = div(num, den, c);
            }
            break;
        }
        case ExprKind::int_pow: v = int_pow(forward(e->left, x, u, c, vals), e->exponent, c); break;
    }
    vals[e.get()] = v;
    return v;
}

// Tightest interval containing {t in cur : t in pieces}.
Interval meet_pieces(const Interval& cur, const ExtendedDiv& q, OpCounters& c) {
    if (q.pieces == 0) return Interval::empty();
    Interval a = intersect(cur, q.first, c);
    if (q.pieces == 1) return a;
    Interval b = intersect(cur, q.second, c);
    return hull(a, b, c);
}

// Preimage of `range` under t -> t^k intersected with `cur`.
Interval pow_preimage(const Interval& cur, const Interval& range, unsigned k, OpCounters& c) {
    if (range.is_empty() || cur.is_empty()) return Interval::empty();
    if (k == 1) return intersect(cur, range, c);
    if (k % 2 == 1) {
        auto sroot_down = [&](double v) {
            return v >= 0 ? rnd::root_down(v, k) : -rnd::root_up(-v, k);
        };
        auto sroot_up = [&](double v) {
            return v >= 0 ? rnd::root_up(v, k) : -rnd::root_down(-v, k);
        };
        double lo = range.lo() == -rnd::kInf ? -rnd::kInf : sroot_down(range.lo());
        double hi = range.hi() == rnd::kInf ? rnd::kInf : sroot_up(range.hi());
        return intersect(cur, Interval(lo, hi), c);
    }
    // Even power: two symmetric branches around zero.
    Interval pos_range = intersect(range, Interval(0.0, rnd::kInf), c);
    if (pos_range.is_empty()) return Interval::empty();
    double rlo = rnd::root_down(pos_range.lo(), k);
    double rhi = pos_range.hi() == rnd::kInf ? rnd::kInf : rnd::root_up(pos_range.hi(), k);
    Interval pos(rlo, rhi);
    Interval negb = pos.hi() == rnd::kInf ? Interval(-rnd::kInf, -pos.lo())
                                          : Interval(-pos.hi(), -pos.lo());
    Interval a = intersect(cur, pos, c);
    Interval b = intersect(cur, negb, c);
    return hull(a, b, c);
}

struct BackwardContext {
    const ForwardValues& vals;
    Box& x;
    const Box& u;
    OpCounters& c;
};

const Interval& fval(const BackwardContext& ctx, const ExprPtr& e) {
    return ctx.vals.at(e.get());
}

// Narrow the subtree rooted at e so its value meets `req`; returns false on
// certified infeasibility.
bool backward(BackwardContext& ctx, const ExprPtr& e, const Interval& req) {
    OpCounters& c = ctx.c;
    Interval meet = intersect(fval(ctx, e), req, c);
    if (meet.is_empty()) return false;

    switch (e->kind) {
        case ExprKind::constant: return true;
        case ExprKind::state_var: {
            auto i = static_cast<std::size_t>(e->index);
            ctx.x[i] = intersect(ctx.x[i], meet, c);
            return !ctx.x[i].is_empty();
        }
        case ExprKind::param_var: {
            // U is never narrowed, but an empty projection certifies that no
            // admissible parameter satisfies the constraint.
            auto j = static_cast<std::size_t>(e->index);
            return !intersect(ctx.u[j], meet, c).is_empty();
        }
        case ExprKind::neg: return backward(ctx, e->left, neg(meet, c));
        case ExprKind::add: {
            Interval lreq = sub(meet, fval(ctx, e->right), c);
            if (!backward(ctx, e->left, lreq)) return false;
            Interval rreq = sub(meet, fval(ctx, e->left), c);
            return backward(ctx, e->right, rreq);
        }
        case ExprKind::sub: {
            Interval lreq = add(meet, fval(ctx, e->right), c);
            if (!backward(ctx, e->left, lreq)) return false;
            Interval rreq = sub(fval(ctx, e->left), meet, c);
            return backward(ctx, e->right, rreq);
        }
        case ExprKind::mul: {
            // With 0 in both the projected range and the co-factor, any value
            // satisfies v * 0 = 0, so the operand stays unconstrained.
            Interval lreq = fval(ctx, e->left);
            if (!(meet.contains_zero() && fval(ctx, e->right).contains_zero())) {
                ExtendedDiv lq = extended_div(meet, fval(ctx, e->right), c);
                lreq = meet_pieces(lreq, lq, c);
            }
            if (!backward(ctx, e->left, lreq)) return false;
            Interval rreq = fval(ctx, e->right);
            if (!(meet.contains_zero() && fval(ctx, e->left).contains_zero())) {
                ExtendedDiv rq = extended_div(meet, fval(ctx, e->left), c);
                rreq = meet_pieces(rreq, rq, c);
            }
            return backward(ctx, e->right, rreq);
        }
        case ExprKind::div: {
            Interval lreq = intersect(fval(ctx, e->left), mul(meet, fval(ctx, e->right), c), c);
            if (lreq.is_empty() || !backward(ctx, e->left, lreq)) return false;
            // A zero numerator with 0 in the projected range leaves the
            // denominator free (0 / r = 0 for every admissible r).
            Interval rreq = fval(ctx, e->right);
            if (!(fval(ctx, e->left).contains_zero() && meet.contains_zero())) {
                ExtendedDiv rq = extended_div(fval(ctx, e->left), meet, c);
                rreq = meet_pieces(rreq, rq, c);
            }
            return backward(ctx, e->right, rreq);
        }
        case ExprKind::int_pow: {
            if (e->exponent == 0) return true; // value pinned to 1, child free
            Interval creq = pow_preimage(fval(ctx, e->left), meet, e->exponent, c);
            return backward(ctx, e->left, creq);
        }
    }
    throw Error("corrupt expression node");
}

} // namespace

Box hc4_revise(const ExprPtr& e, const Interval& target, const Box& x, const Box& u,
               OpCounters& c) {
    if (x.is_empty()) return Box::empty(x.size());
    ForwardValues vals;
    vals.reserve(64);
    Interval root = forward(e, x, u, c, vals);
    if (root.is_empty()) return Box::empty(x.size());

    Box out = x;
    BackwardContext ctx{vals, out, u, c};
    if (!backward(ctx, e, target)) return Box::empty(x.size());
    return out;
}

ContractionResult contract_system(const SystemModel& m, const Box& x, OpCounters& c) {
    c.contractor_calls += 1;
    ContractionResult r;
    double width_before = x.is_empty() ? 0.0 : box_diam(x, c);

    Box cur = x;
    for (const auto& eq : m.equations) {
        cur = hc4_revise(eq, Interval(0.0), cur, m.u, c);
        if (cur.is_empty()) {
            r.box = Box::empty(x.size());
            r.changed = true;
            r.width_reduction = width_before;
            return r;
        }
    }
    r.changed = !cur.same_as(x);
    r.width_reduction = r.changed ? width_before - box_diam(cur, c) : 0.0;
    r.box = std::move(cur);
    return r;
}

} // namespace ivsolve
