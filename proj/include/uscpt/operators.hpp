// operators.hpp — elementary mode and atom operators on a product basis

#pragma once

#include <Eigen/Dense>

#include <map>

#include "uscpt/basis.hpp"

namespace uscpt {

using OperatorMatrix = Eigen::MatrixXcd;

// per-level excitation weights entering N = a^dag a + sum_l w_l |l><l|
using LevelWeights = std::map<Level, int>;

inline LevelWeights rabi_weights() { return {{Level::g, 0}, {Level::e, 1}}; }
inline LevelWeights lambda_weights() {
    return {{Level::u, 0}, {Level::g, 1}, {Level::e, 2}};
}
inline LevelWeights vee_weights() {
    return {{Level::g, 0}, {Level::e, 1}, {Level::u, 2}};
}

// a with <n-1,l| a |n,l> = sqrt(n); top Fock row truncated
OperatorMatrix annihilation(const Basis& basis);
OperatorMatrix creation(const Basis& basis);

// |to><from| tensor identity on the mode
OperatorMatrix atomic_transition(const Basis& basis, Level from, Level to);

// diagonal (-1)^(n + w(level))
OperatorMatrix parity_operator(const Basis& basis, const LevelWeights& w);

// diagonal n + w(level)
OperatorMatrix excitation_number(const Basis& basis, const LevelWeights& w);

// max |M - M^dag|
double hermiticity_defect(const OperatorMatrix& m);

} // namespace uscpt
