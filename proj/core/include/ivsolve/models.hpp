#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ivsolve/model.hpp"

namespace ivsolve {

// Ring regulatory network with Hill coefficient 10:
//   f_i = 0.5 + a_i / (1 + x_{i-1}^10) - g x_i   (x_0 wraps to x_n)
// X0 = [0,10]^n, parameters u = (a_1..a_n, g) in [3.8,4.2]^n x [0.95,1.05].
SystemModel hill_network(int n);

// Winner-take-all transcriptional circuit with enzyme saturation. States are
// activator RNA concentrations; each node competes for shared polymerase
// through the load terms. Template occupancy is closed as
//   s_i = x_i / (K_A + x_i),  [D_ii x_i] = D_tot s_i,  [D_ii] = D_tot (1-s_i),
//   L   = sum_j ([D_jj x_j]/K_M + [D_jj]/K'_M),        L_d = sum_j x_j,
// and the RNase Michaelis constant is normalized to 1 with its enzyme and
// rate constants folded into k_d_eff:
//   f_i = E_tot/(1+L) (k_cat/K_M [D_ii x_i] + k'_cat/K'_M [D_ii])
//         - k_d_eff x_i / (1 + L_d).
// X0 = [0,2]^n; u = (D_tot, E_tot, K_M, K'_M, k_cat, k'_cat, k_d_eff, K_A).
SystemModel wta_network(int n);

// Small systems with analytically known roots, used by the soundness
// harnesses.
struct KnownRootSystem {
    SystemModel model;
    std::vector<std::vector<double>> roots; // all roots inside x0
};
std::vector<KnownRootSystem> known_root_suite();

// Built-in lookup for the CLI: "hill" and "wta" take a dimension; the
// known-root systems are addressed by name.
std::optional<SystemModel> builtin_model(const std::string& name, int n);
std::vector<std::string> builtin_model_names();

} // namespace ivsolve
