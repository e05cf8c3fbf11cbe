#include "uscpt/operators.hpp"

#include <cmath>
#include <string>

namespace uscpt {

namespace {

int weight_of(const LevelWeights& w, Level l) {
    auto it = w.find(l);
    if (it == w.end())
        throw std::invalid_argument(std::string("missing excitation weight for level '") +
                                    level_char(l) + "'");
    return it->second;
}

} // namespace

OperatorMatrix annihilation(const Basis& basis) {
    const int d = basis.dimension();
    OperatorMatrix a = OperatorMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const BasisState s = basis.state(i);
        if (s.photon_n >= 1)
            a(basis.index(s.photon_n - 1, s.atom_level), i) = std::sqrt(double(s.photon_n));
    }
    return a;
}

OperatorMatrix creation(const Basis& basis) {
    return annihilation(basis).adjoint();
}

OperatorMatrix atomic_transition(const Basis& basis, Level from, Level to) {
    if (!basis.has_level(from))
        throw std::invalid_argument(std::string("atomic_transition: level '") +
                                    level_char(from) + "' not in basis");
    if (!basis.has_level(to))
        throw std::invalid_argument(std::string("atomic_transition: level '") +
                                    level_char(to) + "' not in basis");
    const int d = basis.dimension();
    OperatorMatrix m = OperatorMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const BasisState s = basis.state(i);
        if (s.atom_level == from)
            m(basis.index(s.photon_n, to), i) = 1.0;
    }
    return m;
}

OperatorMatrix parity_operator(const Basis& basis, const LevelWeights& w) {
    const int d = basis.dimension();
    OperatorMatrix m = OperatorMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const BasisState s = basis.state(i);
        const int k = s.photon_n + weight_of(w, s.atom_level);
        m(i, i) = (k % 2 == 0) ? 1.0 : -1.0;
    }
    return m;
}

OperatorMatrix excitation_number(const Basis& basis, const LevelWeights& w) {
    const int d = basis.dimension();
    OperatorMatrix m = OperatorMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const BasisState s = basis.state(i);
        m(i, i) = double(s.photon_n + weight_of(w, s.atom_level));
    }
    return m;
}

double hermiticity_defect(const OperatorMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace uscpt
