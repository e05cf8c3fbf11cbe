// model.hpp — undriven Hamiltonians (generalized Rabi, three-level Lambda
// and Vee ladders with stray coupling) and the drive dipole operators

#pragma once

#include "uscpt/operators.hpp"

namespace uscpt {

enum class Scheme { Rabi, Lambda, Vee };

// All couplings in units of omega_c (= 1); energies likewise.
// epsilon:        e-g splitting
// epsilon_prime:  ancilla offset; Lambda: u sits at -epsilon_prime,
//                 Vee: u sits at (2+alpha)*epsilon = epsilon + epsilon_prime
// g, g_c:         corotating / counterrotating e-g couplings
// g_prime, g_prime_c: corotating / counterrotating stray couplings
// alpha, eta:     bookkeeping, tied by epsilon_prime = (1+alpha)*epsilon
//                 and g_prime = eta*g
struct ModelParams {
    double epsilon{1.0};
    double epsilon_prime{0.0};
    double omega_c{1.0};
    double g{0.0};
    double g_c{0.0};
    double g_prime{0.0};
    double g_prime_c{0.0};
    double alpha{0.0};
    double eta{0.0};

    // physical case: g_c = g, g_prime_c = g_prime
    static ModelParams rabi(double epsilon, double g, double g_c);
    static ModelParams lambda_scheme(double epsilon, double epsilon_prime, double g,
                                     double g_c, double g_prime, double g_prime_c);
    static ModelParams vee_scheme(double epsilon, double alpha, double g, double g_c,
                                  double g_prime, double g_prime_c);

    // throws on negative couplings or inconsistent derived fields
    void validate() const;
};

// H = eps |e><e| + wc a^dag a + g (a^dag|g><e| + a|e><g|) + g_c (a|g><e| + a^dag|e><g|)
OperatorMatrix rabi_hamiltonian(const Basis& basis, const ModelParams& p);

// level energies {-eps', 0, eps}; couplings (g a|e><g| + g' a|g><u|) + h.c.
// plus counterrotating (g_c a^dag|e><g| + g'_c a^dag|g><u|) + h.c.
OperatorMatrix lambda_hamiltonian(const Basis& basis, const ModelParams& p);

// level energies {0, eps, (2+alpha) eps}; couplings (g a|e><g| + g' a|u><e|) + h.c.
// plus counterrotating (g_c a^dag|e><g| + g'_c a^dag|u><e|) + h.c.
OperatorMatrix vee_hamiltonian(const Basis& basis, const ModelParams& p);

OperatorMatrix build_hamiltonian(Scheme scheme, const Basis& basis, const ModelParams& p);

// same model with the counterrotating couplings scaled by s (labeling ramps)
ModelParams with_counterrotating_scaled(const ModelParams& p, double s);

LevelWeights scheme_weights(Scheme scheme);
std::vector<Level> scheme_levels(Scheme scheme);

enum class DriveScheme { LambdaLadder, VeeLadder, UGOnly, UEOnly };

// Hermitian dimensionless dipole; the control Hamiltonian is H_C(t) = W(t) D.
// LambdaLadder: (|u><g| + (1/eta)|g><e|) + h.c.
// VeeLadder:    (|e><u| + (1/eta)|e><g|) + h.c.
// UGOnly:       |u><g| + |g><u|;   UEOnly: |u><e| + |e><u|
OperatorMatrix drive_operator(const Basis& basis, DriveScheme scheme, double eta = 0.0);

} // namespace uscpt
