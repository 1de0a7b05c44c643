#include "ivsolve/models.hpp"

#include <cmath>

namespace ivsolve {

namespace {

ExprPtr c(double v) { return Expr::constant(v); }
ExprPtr x(int i) { return Expr::state(i); }
ExprPtr u(int i) { return Expr::param(i); }

} // namespace

SystemModel hill_network(int n) {
    if (n < 2) throw Error("hill network needs n >= 2");

    std::vector<ExprPtr> eqs;
    eqs.reserve(static_cast<std::size_t>(n));
    const int gamma = n; // parameter layout: u1..un = alpha_i, u_{n+1} = gamma
    for (int i = 0; i < n; ++i) {
        int pred = i == 0 ? n - 1 : i - 1;
        ExprPtr hill = Expr::make_div(u(i), Expr::make_add(c(1.0), Expr::make_pow(x(pred), 10)));
        ExprPtr eq = Expr::make_sub(Expr::make_add(c(0.5), std::move(hill)),
                                    Expr::make_mul(u(gamma), x(i)));
        eqs.push_back(std::move(eq));
    }

    Box x0(static_cast<std::size_t>(n), Interval(0.0, 10.0));
    std::vector<Interval> params(static_cast<std::size_t>(n), Interval(3.8, 4.2));
    params.emplace_back(0.95, 1.05);
    return SystemModel::make("hill_n" + std::to_string(n), std::move(eqs), std::move(x0),
                             Box(std::move(params)));
}

SystemModel wta_network(int n) {
    if (n < 1) throw Error("wta network needs n >= 1");

    enum { D_tot = 0, E_tot = 1, K_M = 2, Kp_M = 3, k_cat = 4, kp_cat = 5, k_d_eff = 6, K_A = 7 };

    std::vector<ExprPtr> sigma;
    sigma.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        sigma.push_back(Expr::make_div(x(j), Expr::make_add(u(K_A), x(j))));

    auto on_state = [&](int j) { return Expr::make_mul(u(D_tot), sigma[static_cast<std::size_t>(j)]); };
    auto off_state = [&](int j) {
        return Expr::make_mul(u(D_tot),
                              Expr::make_sub(c(1.0), sigma[static_cast<std::size_t>(j)]));
    };

    // Polymerase load L and degradation load L_d, summed over all nodes.
    ExprPtr load;
    ExprPtr load_d;
    for (int j = 0; j < n; ++j) {
        ExprPtr term = Expr::make_add(Expr::make_div(on_state(j), u(K_M)),
                                      Expr::make_div(off_state(j), u(Kp_M)));
        load = load ? Expr::make_add(std::move(load), std::move(term)) : std::move(term);
        load_d = load_d ? Expr::make_add(std::move(load_d), x(j)) : x(j);
    }

    std::vector<ExprPtr> eqs;
    eqs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ExprPtr production = Expr::make_div(
            Expr::make_mul(u(E_tot),
                           Expr::make_add(Expr::make_mul(Expr::make_div(u(k_cat), u(K_M)),
                                                         on_state(i)),
                                          Expr::make_mul(Expr::make_div(u(kp_cat), u(Kp_M)),
                                                         off_state(i)))),
            Expr::make_add(c(1.0), load));
        ExprPtr degradation = Expr::make_div(Expr::make_mul(u(k_d_eff), x(i)),
                                             Expr::make_add(c(1.0), load_d));
        eqs.push_back(Expr::make_sub(std::move(production), std::move(degradation)));
    }

    Box x0(static_cast<std::size_t>(n), Interval(0.0, 2.0));
    std::vector<Interval> params = {
        Interval(1.98, 2.02),       // D_tot
        Interval(0.099, 0.101),     // E_tot
        Interval(0.0099, 0.0101),   // K_M
        Interval(0.099, 0.101),     // K'_M
        Interval(0.0297, 0.0303),   // k_cat
        Interval(0.01188, 0.01212), // k'_cat
        Interval(0.00198, 0.00202), // k_d_eff
        Interval(0.99, 1.01),       // K_A
    };
    return SystemModel::make("wta_n" + std::to_string(n), std::move(eqs), std::move(x0),
                             Box(std::move(params)));
}

std::vector<KnownRootSystem> known_root_suite() {
    std::vector<KnownRootSystem> out;

    {
        // x^2 - u1 = 0 with u1 = 2: root sqrt(2).
        std::vector<ExprPtr> eqs;
        eqs.push_back(Expr::make_sub(Expr::make_pow(x(0), 2), u(0)));
        Box x0(1, Interval(0.0, 2.0));
        Box params(std::vector<Interval>{Interval(2.0)});
        KnownRootSystem k;
        k.model = SystemModel::make("sqrt2", std::move(eqs), std::move(x0), std::move(params));
        k.roots = {{std::sqrt(2.0)}};
        out.push_back(std::move(k));
    }
    {
        // Linear system with the unique interior solution (1, 1).
        std::vector<ExprPtr> eqs;
        eqs.push_back(Expr::make_sub(Expr::make_add(x(0), Expr::make_mul(c(2.0), x(1))), c(3.0)));
        eqs.push_back(Expr::make_sub(Expr::make_sub(Expr::make_mul(c(3.0), x(0)), x(1)), c(2.0)));
        Box x0(2, Interval(0.0, 2.0));
        KnownRootSystem k;
        k.model = SystemModel::make("linear2", std::move(eqs), std::move(x0), Box());
        k.roots = {{1.0, 1.0}};
        out.push_back(std::move(k));
    }
    {
        // Decoupled quadratics x_i^2 = c_i: all 8 sign patterns lie in X0.
        std::vector<ExprPtr> eqs;
        for (int i = 0; i < 3; ++i) eqs.push_back(Expr::make_sub(Expr::make_pow(x(i), 2), u(i)));
        Box x0(3, Interval(-2.0, 2.0));
        Box params(std::vector<Interval>{Interval(1.0), Interval(2.0), Interval(3.0)});
        KnownRootSystem k;
        k.model = SystemModel::make("quad3", std::move(eqs), std::move(x0), std::move(params));
        double r1 = 1.0, r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
        for (int s1 : {-1, 1})
            for (int s2 : {-1, 1})
                for (int s3 : {-1, 1}) k.roots.push_back({s1 * r1, s2 * r2, s3 * r3});
        out.push_back(std::move(k));
    }
    {
        // f = (x1 + x2, x1 (1 + x2)): roots (0,0) and (1,-1).
        std::vector<ExprPtr> eqs;
        eqs.push_back(Expr::make_add(x(0), x(1)));
        eqs.push_back(Expr::make_mul(x(0), Expr::make_add(c(1.0), x(1))));
        Box x0(2, Interval(-2.0, 2.0));
        KnownRootSystem k;
        k.model = SystemModel::make("sumprod2", std::move(eqs), std::move(x0), Box());
        k.roots = {{0.0, 0.0}, {1.0, -1.0}};
        out.push_back(std::move(k));
    }
    return out;
}

std::optional<SystemModel> builtin_model(const std::string& name, int n) {
    if (name == "hill") return hill_network(n < 2 ? 2 : n);
    if (name == "wta") return wta_network(n < 1 ? 2 : n);
    for (auto& k : known_root_suite()) {
        if (k.model.name == name) return std::move(k.model);
    }
    return std::nullopt;
}

std::vector<std::string> builtin_model_names() {
    std::vector<std::string> names = {"hill", "wta"};
    for (const auto& k : known_root_suite()) names.push_back(k.model.name);
    return names;
}

} // namespace ivsolve
