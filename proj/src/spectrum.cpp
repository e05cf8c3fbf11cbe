#include "uscpt/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace uscpt {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kResidualTol = 1e-9;
constexpr double kDegenTol = 1e-11;

int weight_of(const LevelWeights& w, Level l) { return w.at(l); }

// first index of the strictly largest |v_i| (deterministic tie-break)
int dominant_row(const Eigen::VectorXd& v) {
    int best = 0;
    double mag = std::abs(v(0));
    for (int i = 1; i < v.size(); ++i) {
        if (std::abs(v(i)) > mag) {
            mag = std::abs(v(i));
            best = i;
        }
    }
    return best;
}

void phase_fix(Eigen::VectorXd& v) {
    if (v(dominant_row(v)) < 0) v = -v;
}

struct ReferenceState {
    Eigen::VectorXd vec; // over kept rows
    StateLabel label;
    double energy;
    int parity; // 0 even, 1 odd
};

struct AmbiguityError {
    std::string message;
};

// consecutive-energy clusters of (numerically) exact degeneracy
std::vector<std::pair<int, int>> degenerate_clusters(const Eigen::VectorXd& vals) {
    std::vector<std::pair<int, int>> out;
    int j = 0;
    const int n = static_cast<int>(vals.size());
    while (j < n) {
        int k = j + 1;
        while (k < n &&
               std::abs(vals(k) - vals(k - 1)) <= kDegenTol * std::max(1.0, std::abs(vals(k))))
            ++k;
        out.emplace_back(j, k);
        j = k;
    }
    return out;
}

// rotate the orthonormal columns Q (a degenerate eigenspace) to best match
// the target columns P via the polar factor of Q^T P
Eigen::MatrixXd polar_align(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& P) {
    Eigen::MatrixXd A = Q.transpose() * P;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return Q * (svd.matrixU() * svd.matrixV().transpose());
}

class ContinuationLabeler {
public:
    ContinuationLabeler(Scheme scheme, const Basis& basis, const ModelParams& target,
                        const LabelOptions& opt)
        : scheme_(scheme), basis_(basis), target_(target), opt_(opt),
          weights_(scheme_weights(scheme)) {
        build_kept();
    }

    LabeledSpectrum run() {
        const bool all_zero = target_.g == 0 && target_.g_c == 0 && target_.g_prime == 0 &&
                              target_.g_prime_c == 0;
        if (all_zero && !opt_.force_structural) return product_label_spectrum();

        int steps = opt_.ramp_steps;
        while (true) {
            try {
                return attempt(steps);
            } catch (const AmbiguityError& e) {
                if (steps * 2 > opt_.max_ramp_steps)
                    throw std::runtime_error("label_spectrum: " + e.message +
                                             " (ramp resolution " + std::to_string(steps) +
                                             " exhausted)");
                steps *= 2;
            }
        }
    }

private:
    Scheme scheme_;
    const Basis& basis_;
    ModelParams target_;
    LabelOptions opt_;
    LevelWeights weights_;
    std::vector<int> kept_;            // product indices in the subspace
    std::vector<int> parity_of_state_; // per kept row

    int excitation_of(const BasisState& s) const {
        return s.photon_n + weight_of(weights_, s.atom_level);
    }

    void build_kept() {
        for (int i = 0; i < basis_.dimension(); ++i) {
            const BasisState s = basis_.state(i);
            if (opt_.excitation_cutoff < 0 || excitation_of(s) <= opt_.excitation_cutoff)
                kept_.push_back(i);
        }
        for (int i : kept_)
            parity_of_state_.push_back(excitation_of(basis_.state(i)) % 2);
    }

    Eigen::MatrixXd restricted_h(const ModelParams& p) const {
        const OperatorMatrix full = build_hamiltonian(scheme_, basis_, p);
        const int d = static_cast<int>(kept_.size());
        Eigen::MatrixXd h(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                h(i, j) = full(kept_[i], kept_[j]).real();
        return h;
    }

    LabeledSpectrum product_label_spectrum() const {
        const int d = static_cast<int>(kept_.size());
        Eigen::MatrixXd h = restricted_h(target_);
        std::vector<int> order(d);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return h(a, a) < h(b, b); });
        LabeledSpectrum out{basis_, kept_, Eigen::VectorXd(d),
                            Eigen::MatrixXcd::Zero(d, d), {}};
        for (int c = 0; c < d; ++c) {
            out.energies(c) = h(order[c], order[c]);
            out.vectors(order[c], c) = 1.0;
            const BasisState s = basis_.state(kept_[order[c]]);
            out.labels.push_back(StateLabel::product(s.photon_n, s.atom_level));
        }
        return out;
    }

    // --- reference: corotating couplings only, conserved excitation number ---

    std::vector<ReferenceState> build_reference() const {
        const Eigen::MatrixXd h0 = restricted_h(with_counterrotating_scaled(target_, 0.0));
        std::map<int, std::vector<int>> manifolds; // N -> kept-row indices
        for (std::size_t r = 0; r < kept_.size(); ++r)
            manifolds[excitation_of(basis_.state(kept_[r]))].push_back(static_cast<int>(r));

        std::vector<ReferenceState> ref;
        for (const auto& [N, rows] : manifolds) {
            const int m = static_cast<int>(rows.size());
            Eigen::MatrixXd block(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    block(i, j) = h0(rows[i], rows[j]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
            Eigen::MatrixXd v = es.eigenvectors();
            Eigen::VectorXd w = es.eigenvalues();

            for (const auto& [c0, c1] : degenerate_clusters(w)) {
                if (c1 - c0 == 1) continue;
                fix_degenerate_reference_pair(N, rows, block, v, c0, c1);
            }

            // the manifold holds at most one u product state; its ancilla
            // label goes to the eigenvector with the largest weight on it,
            // the rest are e-g states (stable assignment through crossings)
            int u_row = -1, u_photon = 0;
            for (int i = 0; i < m; ++i) {
                const BasisState s = basis_.state(kept_[rows[i]]);
                if (s.atom_level == Level::u) {
                    u_row = i;
                    u_photon = s.photon_n;
                }
            }
            int u_col = -1;
            if (u_row >= 0) {
                u_col = 0;
                for (int c = 1; c < m; ++c)
                    if (std::abs(v(u_row, c)) > std::abs(v(u_row, u_col))) u_col = c;
            }
            std::vector<std::pair<double, Eigen::VectorXd>> eg_states;
            for (int c = 0; c < m; ++c) {
                Eigen::VectorXd full = Eigen::VectorXd::Zero(kept_.size());
                for (int i = 0; i < m; ++i) full(rows[i]) = v(i, c);
                phase_fix(full);
                if (c == u_col)
                    ref.push_back({full, StateLabel::ancilla(u_photon), w(c), N % 2});
                else
                    eg_states.emplace_back(w(c), full);
            }
            std::sort(eg_states.begin(), eg_states.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            const int njc = N - weight_of(weights_, Level::g);
            if (eg_states.size() == 1) {
                const StateLabel lab =
                    njc == 0 ? StateLabel::ground() : StateLabel::leftover(njc);
                ref.push_back({eg_states[0].second, lab, eg_states[0].first, N % 2});
            } else if (eg_states.size() == 2) {
                ref.push_back({eg_states[0].second, StateLabel::doublet(njc, -1),
                               eg_states[0].first, N % 2});
                ref.push_back({eg_states[1].second, StateLabel::doublet(njc, +1),
                               eg_states[1].first, N % 2});
            } else if (!eg_states.empty()) {
                throw std::runtime_error("label_spectrum: malformed manifold N=" +
                                         std::to_string(N));
            }
        }
        return ref;
    }

    // a degenerate reference cluster is legal only for an uncoupled e-g pair;
    // replace its arbitrary gauge with (|N-1,e> -+ |N,g>)/sqrt(2)
    void fix_degenerate_reference_pair(int N, const std::vector<int>& rows,
                                       const Eigen::MatrixXd& block, Eigen::MatrixXd& v,
                                       int c0, int c1) const {
        if (c1 - c0 != 2)
            throw std::runtime_error(
                "label_spectrum: degenerate reference cluster of size " +
                std::to_string(c1 - c0) + " in manifold N=" + std::to_string(N));
        const int m = static_cast<int>(rows.size());
        int ie = -1, ig = -1;
        for (int i = 0; i < m; ++i) {
            if (std::max(std::abs(v(i, c0)), std::abs(v(i, c0 + 1))) < 1e-8) continue;
            const Level l = basis_.state(kept_[rows[i]]).atom_level;
            if (l == Level::e && ie < 0) ie = i;
            else if (l == Level::g && ig < 0) ig = i;
            else { ie = ig = -2; break; }
        }
        if (ie < 0 || ig < 0 || std::abs(block(ie, ig)) > 1e-12)
            throw std::runtime_error("label_spectrum: unresolvable degeneracy in manifold N=" +
                                     std::to_string(N));
        v.col(c0).setZero();
        v.col(c0 + 1).setZero();
        v(ie, c0) = 1.0 / std::sqrt(2.0);
        v(ig, c0) = -1.0 / std::sqrt(2.0);
        v(ie, c0 + 1) = 1.0 / std::sqrt(2.0);
        v(ig, c0 + 1) = 1.0 / std::sqrt(2.0);
    }

    // --- continuation ramp ---

    LabeledSpectrum attempt(int steps) const {
        std::vector<ReferenceState> ref = build_reference();

        // split into parity sectors; everything below works per sector
        LabeledSpectrum out{basis_, kept_, Eigen::VectorXd(kept_.size()),
                            Eigen::MatrixXcd::Zero(kept_.size(), kept_.size()), {}};
        std::vector<std::pair<double, int>> order; // (energy, slot)
        std::vector<Eigen::VectorXd> final_vecs;
        std::vector<StateLabel> final_labels;
        std::vector<double> final_energies;

        for (int parity = 0; parity < 2; ++parity) {
            std::vector<int> sector_rows;
            for (std::size_t r = 0; r < kept_.size(); ++r)
                if (parity_of_state_[r] == parity) sector_rows.push_back(static_cast<int>(r));
            if (sector_rows.empty()) continue;

            const int m = static_cast<int>(sector_rows.size());
            Eigen::MatrixXd prev(m, m);
            Eigen::VectorXd prev_vals(m);
            std::vector<StateLabel> labels(m);
            {
                int c = 0;
                std::vector<const ReferenceState*> sector_ref;
                for (const auto& rs : ref)
                    if (rs.parity == parity) sector_ref.push_back(&rs);
                std::sort(sector_ref.begin(), sector_ref.end(),
                          [](const ReferenceState* a, const ReferenceState* b) {
                              return a->energy < b->energy;
                          });
                for (const ReferenceState* rs : sector_ref) {
                    for (int i = 0; i < m; ++i) prev(i, c) = rs->vec(sector_rows[i]);
                    prev_vals(c) = rs->energy;
                    labels[c] = rs->label;
                    ++c;
                }
            }

            for (int k = 1; k <= steps; ++k) {
                const double s = double(k) / steps;
                const Eigen::MatrixXd h = restricted_h(with_counterrotating_scaled(target_, s));
                Eigen::MatrixXd hs(m, m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j)
                        hs(i, j) = h(sector_rows[i], sector_rows[j]);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hs);
                Eigen::MatrixXd q = es.eigenvectors();
                const Eigen::VectorXd vals = es.eigenvalues();

                align_new_clusters(prev, q, vals);
                match_step(s, prev, prev_vals, labels, q, vals);
                prev = q;
                prev_vals = vals;
            }

            for (int c = 0; c < m; ++c) {
                Eigen::VectorXd full = Eigen::VectorXd::Zero(kept_.size());
                for (int i = 0; i < m; ++i) full(sector_rows[i]) = prev(i, c);
                phase_fix(full);
                final_vecs.push_back(full);
                final_labels.push_back(labels[c]);
                final_energies.push_back(prev_vals(c));
            }
        }

        std::vector<int> idx(final_vecs.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return final_energies[a] < final_energies[b];
        });
        for (std::size_t c = 0; c < idx.size(); ++c) {
            out.energies(c) = final_energies[idx[c]];
            out.vectors.col(c) = final_vecs[idx[c]].cast<std::complex<double>>();
            out.labels.push_back(final_labels[idx[c]]);
        }
        return out;
    }

    // gauge-fix exactly degenerate new eigenspaces onto the previous step
    void align_new_clusters(const Eigen::MatrixXd& prev, Eigen::MatrixXd& q,
                            const Eigen::VectorXd& vals) const {
        for (const auto& [c0, c1] : degenerate_clusters(vals)) {
            const int mc = c1 - c0;
            if (mc == 1) continue;
            const Eigen::MatrixXd Q = q.middleCols(c0, mc);
            // previous columns with the largest projection onto span(Q)
            Eigen::VectorXd proj = (Q.transpose() * prev).colwise().norm();
            std::vector<int> top(prev.cols());
            std::iota(top.begin(), top.end(), 0);
            std::stable_sort(top.begin(), top.end(),
                             [&](int a, int b) { return proj(a) > proj(b); });
            Eigen::MatrixXd P(prev.rows(), mc);
            for (int i = 0; i < mc; ++i) P.col(i) = prev.col(top[i]);
            q.middleCols(c0, mc) = polar_align(Q, P);
        }
    }

    void match_step(double s, Eigen::MatrixXd& prev, const Eigen::VectorXd& prev_vals,
                    std::vector<StateLabel>& labels, Eigen::MatrixXd& q,
                    const Eigen::VectorXd& vals) const {
        const int m = static_cast<int>(labels.size());
        bool retried = false;
        while (true) {
            Eigen::MatrixXd overlap = (prev.transpose() * q).cwiseAbs();
            std::vector<int> match(m, -1);
            std::vector<int> used(m, 0);
            int ambiguous_col = -1;
            int amb_i = -1, amb_j = -1;
            for (int c = 0; c < m; ++c) {
                int best = -1, second = -1;
                for (int i = 0; i < m; ++i) {
                    if (best < 0 || overlap(i, c) > overlap(best, c)) {
                        second = best;
                        best = i;
                    } else if (second < 0 || overlap(i, c) > overlap(second, c)) {
                        second = i;
                    }
                }
                if (m > 1 && overlap(best, c) - overlap(second, c) < opt_.ambiguity_tol) {
                    ambiguous_col = c;
                    amb_i = best;
                    amb_j = second;
                    break;
                }
                if (used[best]) {
                    ambiguous_col = c;
                    amb_i = best;
                    amb_j = match[best] >= 0 ? match[best] : best;
                    break;
                }
                used[best] = 1;
                match[best] = c;
            }
            if (ambiguous_col < 0) {
                std::vector<StateLabel> new_labels(m);
                for (int i = 0; i < m; ++i) new_labels[match[i]] = labels[i];
                labels = new_labels;
                return;
            }
            // a degenerate previous doublet pair has arbitrary gauge: rotate it
            // onto the new vectors and reassign -/+ by the new energy order
            if (!retried &&
                try_rotate_prev_pair(prev, prev_vals, labels, q, vals, amb_i, amb_j)) {
                retried = true;
                continue;
            }
            std::ostringstream msg;
            msg << "ambiguous assignment at ramp s=" << s << " between " << labels[amb_i].str()
                << " and " << labels[amb_j].str();
            throw AmbiguityError{msg.str()};
        }
    }

    bool try_rotate_prev_pair(Eigen::MatrixXd& prev, const Eigen::VectorXd& prev_vals,
                              std::vector<StateLabel>& labels, const Eigen::MatrixXd& q,
                              const Eigen::VectorXd& vals, int i, int j) const {
        if (i == j) return false;
        if (std::abs(prev_vals(i) - prev_vals(j)) >
            kDegenTol * std::max(1.0, std::abs(prev_vals(i))))
            return false;
        const StateLabel a = labels[i], b = labels[j];
        const bool convention_pair = a.kind == StateLabel::Kind::Doublet &&
                                     b.kind == StateLabel::Kind::Doublet && a.n == b.n &&
                                     a.branch != b.branch;
        if (!convention_pair) return false;

        Eigen::MatrixXd P(prev.rows(), 2);
        P.col(0) = prev.col(i);
        P.col(1) = prev.col(j);
        // the two new columns with the largest projection onto span(P)
        Eigen::VectorXd proj = (P.transpose() * q).colwise().norm();
        int t0 = 0, t1 = 1;
        if (proj(1) > proj(0)) std::swap(t0, t1);
        for (int c = 2; c < q.cols(); ++c) {
            if (proj(c) > proj(t0)) {
                t1 = t0;
                t0 = c;
            } else if (proj(c) > proj(t1)) {
                t1 = c;
            }
        }
        Eigen::MatrixXd Qt(q.rows(), 2);
        Qt.col(0) = q.col(std::min(t0, t1));
        Qt.col(1) = q.col(std::max(t0, t1));
        const Eigen::MatrixXd rotated = polar_align(P, Qt);
        prev.col(i) = rotated.col(0);
        prev.col(j) = rotated.col(1);
        // minus branch follows the lower of the two new energies
        const int lower = vals(std::min(t0, t1)) <= vals(std::max(t0, t1)) ? 0 : 1;
        labels[i] = StateLabel::doublet(a.n, lower == 0 ? -1 : +1);
        labels[j] = StateLabel::doublet(a.n, lower == 0 ? +1 : -1);
        return true;
    }
};

} // namespace

std::string StateLabel::str() const {
    switch (kind) {
        case Kind::Product: return std::to_string(n) + level_char(level);
        case Kind::Ground: return "0";
        case Kind::Doublet: return std::to_string(n) + (branch < 0 ? "-" : "+");
        case Kind::Ancilla: return std::to_string(n) + "u";
        case Kind::Leftover: return std::to_string(n) + "x";
    }
    return "?";
}

StateLabel StateLabel::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("StateLabel::parse: empty");
    if (s == "0") return ground();
    const char tail = s.back();
    const std::string head = s.substr(0, s.size() - 1);
    auto head_int = [&]() {
        std::size_t pos = 0;
        const int v = std::stoi(head, &pos);
        if (pos != head.size() || v < 0)
            throw std::invalid_argument("StateLabel::parse: bad index in '" + s + "'");
        return v;
    };
    switch (tail) {
        case '-': return doublet(head_int(), -1);
        case '+': return doublet(head_int(), +1);
        case 'u': return ancilla(head_int());
        case 'x': return leftover(head_int());
        case 'g': return product(head_int(), Level::g);
        case 'e': return product(head_int(), Level::e);
        default: throw std::invalid_argument("StateLabel::parse: unknown label '" + s + "'");
    }
}

int LabeledSpectrum::find(const StateLabel& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("LabeledSpectrum: unknown label '" + label.str() + "'");
}

bool LabeledSpectrum::has(const StateLabel& label) const {
    for (const auto& l : labels)
        if (l == label) return true;
    return false;
}

double LabeledSpectrum::energy(const StateLabel& label) const {
    return energies(find(label));
}

Eigen::VectorXcd LabeledSpectrum::vector(const StateLabel& label) const {
    return vectors.col(find(label));
}

double LabeledSpectrum::amplitude(const StateLabel& label, const BasisState& s) const {
    const int col = find(label);
    const int full_idx = basis.index(s);
    for (std::size_t r = 0; r < kept.size(); ++r)
        if (kept[r] == full_idx) return vectors(r, col).real();
    return 0.0;
}

OperatorMatrix LabeledSpectrum::restrict_operator(const OperatorMatrix& full) const {
    const int d = dimension();
    OperatorMatrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out(i, j) = full(kept[i], kept[j]);
    return out;
}

EigenSystem diagonalize(const OperatorMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("diagonalize: matrix not square");
    const double defect = hermiticity_defect(h);
    if (defect > kHermTol)
        throw std::invalid_argument("diagonalize: input not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("diagonalize: eigensolver failed");
    EigenSystem sys{es.eigenvalues(), es.eigenvectors()};
    for (int c = 0; c < sys.vectors.cols(); ++c) {
        const double res =
            (h * sys.vectors.col(c) - sys.values(c) * sys.vectors.col(c)).cwiseAbs().maxCoeff();
        if (res > kResidualTol)
            throw std::runtime_error("diagonalize: residual " + std::to_string(res) +
                                     " above tolerance");
    }
    return sys;
}

LabeledSpectrum label_spectrum(Scheme scheme, const Basis& basis, const ModelParams& p,
                               const LabelOptions& opt) {
    p.validate();
    if (opt.ramp_steps < 1) throw std::invalid_argument("label_spectrum: ramp_steps < 1");
    return ContinuationLabeler(scheme, basis, p, opt).run();
}

double dressed_element(const LabeledSpectrum& spec, const OperatorMatrix& dipole,
                       const StateLabel& a, const StateLabel& b) {
    const OperatorMatrix d = spec.restrict_operator(dipole);
    const std::complex<double> v =
        spec.vector(a).adjoint() * (d * spec.vector(b));
    return v.real();
}

GroundAmplitudes perturbative_ground_amplitudes(const ModelParams& p) {
    const double wc = p.omega_c;
    const double den = 4 * wc * wc - 2 * p.g * p.g;
    if (den <= 0)
        throw std::domain_error("perturbative_ground_amplitudes: 2g^2 >= 4wc^2, "
                                "formula outside validity");
    const double c00 =
        den / std::sqrt(den * den + p.g_c * p.g_c * (4 * wc * wc + 2 * p.g * p.g));
    const double c02 = p.g_c * std::sqrt(2.0) * p.g / den;
    return {c00, c02};
}

DoubletAmplitudes perturbative_doublet_amplitudes(const ModelParams& p) {
    const double wc = p.omega_c;
    const double den_m = (2 * wc + p.g) * (2 * wc + p.g) - 3 * p.g * p.g;
    const double den_p = (2 * wc - p.g) * (2 * wc - p.g) - 3 * p.g * p.g;
    if (std::abs(den_m) < 1e-9 || std::abs(den_p) < 1e-9)
        throw std::domain_error("perturbative_doublet_amplitudes: vanishing denominator");
    return {-p.g_c * (2 * wc + p.g) / den_m, -p.g_c * (2 * wc - p.g) / den_p};
}

LambdaStrayAmplitudes lambda_stray_perturbative(const ModelParams& p) {
    const double det = p.epsilon_prime - p.omega_c;
    if (std::abs(det) < 1e-9)
        throw std::domain_error("lambda_stray_perturbative: epsilon_prime at the mode resonance");
    const double den = det * det - p.g * p.g;
    if (std::abs(den) < 1e-9)
        throw std::domain_error("lambda_stray_perturbative: degenerate denominator");
    const double f01 = p.g_prime / det;
    const double c2u1 = -std::sqrt(2.0) * p.g_prime * det / den;
    const double f2u0 = p.g_prime_c / (2 * p.omega_c) * c2u1;
    return {f01, c2u1, f2u0};
}

namespace {

double stokes_element_impl(Scheme scheme, const ModelParams& p, int n_max,
                           int excitation_cutoff, DoubletBranch branch) {
    if (scheme == Scheme::Rabi)
        throw std::invalid_argument("stokes_matrix_element: needs a three-level scheme");
    const Basis basis(n_max, scheme_levels(scheme));
    LabelOptions opt;
    opt.excitation_cutoff = excitation_cutoff;
    opt.force_structural = true;
    const LabeledSpectrum spec = label_spectrum(scheme, basis, p, opt);
    const OperatorMatrix dipole =
        drive_operator(basis, scheme == Scheme::Lambda ? DriveScheme::UGOnly
                                                       : DriveScheme::UEOnly);
    const StateLabel target = StateLabel::ancilla(2);
    const StateLabel mid = scheme == Scheme::Lambda
                               ? StateLabel::ground()
                               : StateLabel::doublet(1, branch == DoubletBranch::Minus ? -1 : +1);
    return dressed_element(spec, dipole, mid, target);
}

} // namespace

double stokes_matrix_element(Scheme scheme, const ModelParams& p, int subspace_n_max,
                             DoubletBranch branch) {
    const int min_cutoff = scheme == Scheme::Lambda ? 4 : 6;
    if (subspace_n_max < min_cutoff)
        throw std::invalid_argument("stokes_matrix_element: excitation cutoff must be >= " +
                                    std::to_string(min_cutoff));
    return stokes_element_impl(scheme, p, subspace_n_max, subspace_n_max, branch);
}

double stokes_matrix_element_full(Scheme scheme, const ModelParams& p, int n_max,
                                  DoubletBranch branch) {
    return stokes_element_impl(scheme, p, n_max, -1, branch);
}

std::vector<ScanPoint> bloch_siegert_scan(const std::vector<double>& g_grid,
                                          double gc_over_g, double epsilon, int n_max,
                                          int count) {
    std::vector<ScanPoint> out;
    const Basis basis(n_max, two_level_set());
    for (double g : g_grid) {
        const ModelParams p = ModelParams::rabi(epsilon, g, gc_over_g * g);
        LabelOptions opt;
        opt.force_structural = true;
        const LabeledSpectrum spec = label_spectrum(Scheme::Rabi, basis, p, opt);
        ScanPoint pt;
        pt.value = g;
        const int k = count > 0 ? std::min(count, spec.dimension()) : spec.dimension();
        pt.energies = spec.energies.head(k);
        pt.labels.assign(spec.labels.begin(), spec.labels.begin() + k);
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace uscpt
