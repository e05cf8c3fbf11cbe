// spectrum.hpp — dressed-state spectra: diagonalization, quantum-number
// labeling by adiabatic continuation, product-basis amplitudes, closed-form
// perturbative amplitudes, and dressed dipole matrix elements

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uscpt/model.hpp"

namespace uscpt {

// Quantum-number tag carried by each dressed eigenstate.
//   Product:  |n l> of a fully uncoupled model
//   Ground:   the dressed ground continuing |0g>
//   Doublet:  (N, -/+) continuing the JC doublet of the e-g block
//   Ancilla:  continuing the ancilla ladder state with photon index n
//   Leftover: single top-of-truncation e-g state with no doublet partner
struct StateLabel {
    enum class Kind { Product, Ground, Doublet, Ancilla, Leftover };
    Kind kind{Kind::Ground};
    int n{0};
    int branch{0}; // doublet only: -1 or +1
    Level level{Level::g}; // product only

    static StateLabel product(int n, Level l) { return {Kind::Product, n, 0, l}; }
    static StateLabel ground() { return {Kind::Ground, 0, 0, Level::g}; }
    static StateLabel doublet(int N, int branch) { return {Kind::Doublet, N, branch, Level::g}; }
    static StateLabel ancilla(int n) { return {Kind::Ancilla, n, 0, Level::u}; }
    static StateLabel leftover(int N) { return {Kind::Leftover, N, 0, Level::e}; }

    bool operator==(const StateLabel& o) const {
        return kind == o.kind && n == o.n && branch == o.branch && level == o.level;
    }
    bool operator!=(const StateLabel& o) const { return !(*this == o); }

    std::string str() const;              // "0", "1-", "2u", "3g", "7x"
    static StateLabel parse(const std::string& s);
};

// Eigen pairs of an undriven Hamiltonian with continuation labels.
// Phase convention: largest-magnitude component real and positive.
struct LabeledSpectrum {
    Basis basis;
    std::vector<int> kept;     // product-state indices spanning the (sub)space
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXcd vectors;  // orthonormal columns, kept.size() rows
    std::vector<StateLabel> labels;

    int dimension() const { return static_cast<int>(kept.size()); }
    int find(const StateLabel& label) const;        // throws if unknown
    bool has(const StateLabel& label) const;
    double energy(const StateLabel& label) const;
    Eigen::VectorXcd vector(const StateLabel& label) const;

    // signed overlap <n,l | Psi_label>; zero if the product state is outside
    // the spanned subspace
    double amplitude(const StateLabel& label, const BasisState& s) const;

    // restrict an operator on the full product basis to the kept rows/cols
    OperatorMatrix restrict_operator(const OperatorMatrix& full) const;
};

struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

// dense Hermitian eigensolve; requires hermiticity defect <= 1e-10 and
// checks the residual |Hv - lambda v| <= 1e-9 per pair
EigenSystem diagonalize(const OperatorMatrix& h);

struct LabelOptions {
    int ramp_steps{20};
    int max_ramp_steps{320};       // ambiguity retries double up to this
    int excitation_cutoff{-1};     // restrict to N <= cutoff; -1 = full space
    double ambiguity_tol{1e-3};
    bool force_structural{false};  // structural labels even at zero coupling
};

// Labels eigenstates by continuation from the corotating-only limit
// (counterrotating couplings ramped 0 -> target). At zero couplings the
// labels are the product-state names unless force_structural is set.
LabeledSpectrum label_spectrum(Scheme scheme, const Basis& basis, const ModelParams& p,
                               const LabelOptions& opt = {});

// <Psi_a| D |Psi_b> under the fixed phase convention; D on the full basis
double dressed_element(const LabeledSpectrum& spec, const OperatorMatrix& dipole,
                       const StateLabel& a, const StateLabel& b);

struct GroundAmplitudes {
    double c00;
    double c02;
};
// leading corrections to the JC ground state, perturbative in g_c
GroundAmplitudes perturbative_ground_amplitudes(const ModelParams& p);

struct DoubletAmplitudes {
    double d_minus_2; // <2e|Phi_1->
    double d_plus_2;  // <2e|Phi_1+>
};
DoubletAmplitudes perturbative_doublet_amplitudes(const ModelParams& p);

struct LambdaStrayAmplitudes {
    double f01;  // <1u|Psi_0>
    double c2u1; // <1g|Psi_2u>
    double f2u0; // <0u|Psi_2u>
};
LambdaStrayAmplitudes lambda_stray_perturbative(const ModelParams& p);

enum class DoubletBranch { Minus, Plus };

// Dressed Stokes dipole element from diagonalization restricted to the
// N <= subspace_n_max manifolds. Lambda: <Psi_2u| (|u><g|+|g><u|) |Psi_0>,
// minimum cutoff 4; Vee: <Psi_2u| (|u><e|+|e><u|) |Psi_1-+>, minimum 6.
double stokes_matrix_element(Scheme scheme, const ModelParams& p, int subspace_n_max,
                             DoubletBranch branch = DoubletBranch::Minus);

// same element from the full photon-truncated space at the given n_max
double stokes_matrix_element_full(Scheme scheme, const ModelParams& p, int n_max,
                                  DoubletBranch branch = DoubletBranch::Minus);

struct ScanPoint {
    double value{0.0};
    std::vector<StateLabel> labels;
    Eigen::VectorXd energies; // aligned with labels
};

// Rabi spectrum vs g with g_c = gc_over_g * g, labeled by continuation;
// keeps the lowest `count` states (0 = all)
std::vector<ScanPoint> bloch_siegert_scan(const std::vector<double>& g_grid,
                                          double gc_over_g, double epsilon, int n_max,
                                          int count = 0);

} // namespace uscpt
