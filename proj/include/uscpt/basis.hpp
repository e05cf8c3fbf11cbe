// basis.hpp — truncated atom x mode product basis |n, level>

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace uscpt {

enum class Level : int { u = 0, g = 1, e = 2 };

inline char level_char(Level l) {
    switch (l) {
        case Level::u: return 'u';
        case Level::g: return 'g';
        case Level::e: return 'e';
    }
    return '?';
}

inline Level level_from_char(char c) {
    switch (c) {
        case 'u': return Level::u;
        case 'g': return Level::g;
        case 'e': return Level::e;
    }
    throw std::invalid_argument(std::string("unknown atomic level '") + c + "'");
}

struct BasisState {
    int photon_n{0};
    Level atom_level{Level::g};

    bool operator==(const BasisState& o) const {
        return photon_n == o.photon_n && atom_level == o.atom_level;
    }
    std::string name() const {
        return std::to_string(photon_n) + level_char(atom_level);
    }
};

// Product basis with fixed ordering: atom level varies fastest, photon
// number slowest, so index = photon_n * levels.size() + level_position.
class Basis {
public:
    Basis(int n_max, std::vector<Level> levels)
        : n_max_(n_max), levels_(std::move(levels)) {
        if (n_max_ < 0) throw std::invalid_argument("Basis: n_max must be >= 0");
        if (levels_.empty()) throw std::invalid_argument("Basis: empty level set");
        for (std::size_t i = 0; i < levels_.size(); ++i)
            for (std::size_t j = i + 1; j < levels_.size(); ++j)
                if (levels_[i] == levels_[j])
                    throw std::invalid_argument("Basis: duplicate level");
    }

    int n_max() const { return n_max_; }
    const std::vector<Level>& levels() const { return levels_; }
    int num_levels() const { return static_cast<int>(levels_.size()); }
    int dimension() const { return (n_max_ + 1) * num_levels(); }

    bool has_level(Level l) const {
        for (Level x : levels_)
            if (x == l) return true;
        return false;
    }

    int level_position(Level l) const {
        for (std::size_t i = 0; i < levels_.size(); ++i)
            if (levels_[i] == l) return static_cast<int>(i);
        throw std::invalid_argument(std::string("Basis: level '") +
                                    level_char(l) + "' not in basis");
    }

    int index(int photon_n, Level l) const {
        if (photon_n < 0 || photon_n > n_max_)
            throw std::out_of_range("Basis: photon number " +
                                    std::to_string(photon_n) + " outside cutoff");
        return photon_n * num_levels() + level_position(l);
    }
    int index(const BasisState& s) const { return index(s.photon_n, s.atom_level); }

    BasisState state(int i) const {
        if (i < 0 || i >= dimension())
            throw std::out_of_range("Basis: index out of range");
        return BasisState{i / num_levels(), levels_[i % num_levels()]};
    }

private:
    int n_max_;
    std::vector<Level> levels_;
};

inline Basis build_basis(int n_max, std::vector<Level> levels) {
    return Basis(n_max, std::move(levels));
}

inline std::vector<Level> two_level_set() { return {Level::g, Level::e}; }
inline std::vector<Level> lambda_level_set() { return {Level::u, Level::g, Level::e}; }
inline std::vector<Level> vee_level_set() { return {Level::g, Level::e, Level::u}; }

} // namespace uscpt
