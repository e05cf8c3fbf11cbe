#include "uscpt/model.hpp"

#include <cmath>
#include <stdexcept>

namespace uscpt {

namespace {

constexpr double kConsistencyTol = 1e-12;

void add_coupling(OperatorMatrix& h, const OperatorMatrix& term, double strength) {
    if (strength != 0.0) h += strength * (term + term.adjoint());
}

} // namespace

ModelParams ModelParams::rabi(double epsilon, double g, double g_c) {
    ModelParams p;
    p.epsilon = epsilon;
    p.g = g;
    p.g_c = g_c;
    p.validate();
    return p;
}

ModelParams ModelParams::lambda_scheme(double epsilon, double epsilon_prime, double g,
                                       double g_c, double g_prime, double g_prime_c) {
    ModelParams p;
    p.epsilon = epsilon;
    p.epsilon_prime = epsilon_prime;
    p.g = g;
    p.g_c = g_c;
    p.g_prime = g_prime;
    p.g_prime_c = g_prime_c;
    p.alpha = epsilon != 0.0 ? epsilon_prime / epsilon - 1.0 : 0.0;
    p.eta = g != 0.0 ? g_prime / g : 0.0;
    p.validate();
    return p;
}

ModelParams ModelParams::vee_scheme(double epsilon, double alpha, double g, double g_c,
                                    double g_prime, double g_prime_c) {
    ModelParams p;
    p.epsilon = epsilon;
    p.alpha = alpha;
    p.epsilon_prime = (1.0 + alpha) * epsilon;
    p.g = g;
    p.g_c = g_c;
    p.g_prime = g_prime;
    p.g_prime_c = g_prime_c;
    p.eta = g != 0.0 ? g_prime / g : 0.0;
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (g < 0 || g_c < 0 || g_prime < 0 || g_prime_c < 0)
        throw std::invalid_argument("ModelParams: couplings must be >= 0");
    if (omega_c <= 0)
        throw std::invalid_argument("ModelParams: omega_c must be > 0");
    if (g > 0 && g_prime > 0 && std::abs(eta * g - g_prime) > kConsistencyTol)
        throw std::invalid_argument("ModelParams: eta inconsistent with g_prime/g");
    if (epsilon > 0 && epsilon_prime != 0.0 &&
        std::abs(epsilon_prime - (1.0 + alpha) * epsilon) > kConsistencyTol)
        throw std::invalid_argument("ModelParams: alpha inconsistent with epsilon_prime/epsilon");
}

OperatorMatrix rabi_hamiltonian(const Basis& basis, const ModelParams& p) {
    if (basis.num_levels() != 2 || !basis.has_level(Level::g) || !basis.has_level(Level::e))
        throw std::invalid_argument("rabi_hamiltonian: basis must be the {g,e} two-level set");
    const int d = basis.dimension();
    OperatorMatrix h = OperatorMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const BasisState s = basis.state(i);
        h(i, i) = s.photon_n * p.omega_c + (s.atom_level == Level::e ? p.epsilon : 0.0);
    }
    const OperatorMatrix a = annihilation(basis);
    const OperatorMatrix eg = atomic_transition(basis, Level::g, Level::e); // |e><g|
    add_coupling(h, a * eg, p.g);            // g (a|e><g| + a^dag|g><e|)
    add_coupling(h, a.adjoint() * eg, p.g_c); // g_c (a^dag|e><g| + a|g><e|)
    return h;
}

OperatorMatrix lambda_hamiltonian(const Basis& basis, const ModelParams& p) {
    if (basis.num_levels() != 3 || !basis.has_level(Level::u))
        throw std::invalid_argument("lambda_hamiltonian: basis must contain {u,g,e}");
    const int d = basis.dimension();
    OperatorMatrix h = OperatorMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const BasisState s = basis.state(i);
        double lev = 0.0;
        if (s.atom_level == Level::u) lev = -p.epsilon_prime;
        if (s.atom_level == Level::e) lev = p.epsilon;
        h(i, i) = s.photon_n * p.omega_c + lev;
    }
    const OperatorMatrix a = annihilation(basis);
    const OperatorMatrix eg = atomic_transition(basis, Level::g, Level::e); // |e><g|
    const OperatorMatrix gu = atomic_transition(basis, Level::u, Level::g); // |g><u|
    add_coupling(h, a * eg, p.g);
    add_coupling(h, a * gu, p.g_prime);
    add_coupling(h, a.adjoint() * eg, p.g_c);
    add_coupling(h, a.adjoint() * gu, p.g_prime_c);
    return h;
}

OperatorMatrix vee_hamiltonian(const Basis& basis, const ModelParams& p) {
    if (basis.num_levels() != 3 || !basis.has_level(Level::u))
        throw std::invalid_argument("vee_hamiltonian: basis must contain {g,e,u}");
    const int d = basis.dimension();
    OperatorMatrix h = OperatorMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const BasisState s = basis.state(i);
        double lev = 0.0;
        if (s.atom_level == Level::e) lev = p.epsilon;
        if (s.atom_level == Level::u) lev = (2.0 + p.alpha) * p.epsilon;
        h(i, i) = s.photon_n * p.omega_c + lev;
    }
    const OperatorMatrix a = annihilation(basis);
    const OperatorMatrix eg = atomic_transition(basis, Level::g, Level::e); // |e><g|
    const OperatorMatrix ue = atomic_transition(basis, Level::e, Level::u); // |u><e|
    add_coupling(h, a * eg, p.g);
    add_coupling(h, a * ue, p.g_prime);
    add_coupling(h, a.adjoint() * eg, p.g_c);
    add_coupling(h, a.adjoint() * ue, p.g_prime_c);
    return h;
}

OperatorMatrix build_hamiltonian(Scheme scheme, const Basis& basis, const ModelParams& p) {
    switch (scheme) {
        case Scheme::Rabi: return rabi_hamiltonian(basis, p);
        case Scheme::Lambda: return lambda_hamiltonian(basis, p);
        case Scheme::Vee: return vee_hamiltonian(basis, p);
    }
    throw std::logic_error("build_hamiltonian: bad scheme");
}

ModelParams with_counterrotating_scaled(const ModelParams& p, double s) {
    ModelParams q = p;
    q.g_c = s * p.g_c;
    q.g_prime_c = s * p.g_prime_c;
    return q;
}

LevelWeights scheme_weights(Scheme scheme) {
    switch (scheme) {
        case Scheme::Rabi: return rabi_weights();
        case Scheme::Lambda: return lambda_weights();
        case Scheme::Vee: return vee_weights();
    }
    throw std::logic_error("scheme_weights: bad scheme");
}

std::vector<Level> scheme_levels(Scheme scheme) {
    switch (scheme) {
        case Scheme::Rabi: return two_level_set();
        case Scheme::Lambda: return lambda_level_set();
        case Scheme::Vee: return vee_level_set();
    }
    throw std::logic_error("scheme_levels: bad scheme");
}

OperatorMatrix drive_operator(const Basis& basis, DriveScheme scheme, double eta) {
    const int d = basis.dimension();
    OperatorMatrix D = OperatorMatrix::Zero(d, d);
    switch (scheme) {
        case DriveScheme::LambdaLadder: {
            if (eta <= 0) throw std::invalid_argument("drive_operator: ladder requires eta > 0");
            const OperatorMatrix t = atomic_transition(basis, Level::g, Level::u) +
                                     (1.0 / eta) * atomic_transition(basis, Level::e, Level::g);
            D = t + t.adjoint();
            break;
        }
        case DriveScheme::VeeLadder: {
            if (eta <= 0) throw std::invalid_argument("drive_operator: ladder requires eta > 0");
            const OperatorMatrix t = atomic_transition(basis, Level::u, Level::e) +
                                     (1.0 / eta) * atomic_transition(basis, Level::g, Level::e);
            D = t + t.adjoint();
            break;
        }
        case DriveScheme::UGOnly: {
            const OperatorMatrix t = atomic_transition(basis, Level::g, Level::u);
            D = t + t.adjoint();
            break;
        }
        case DriveScheme::UEOnly: {
            const OperatorMatrix t = atomic_transition(basis, Level::e, Level::u);
            D = t + t.adjoint();
            break;
        }
    }
    return D;
}

} // namespace uscpt
