// basis.hpp
// 17-state atom-cavity basis for the three-atom / three-mode transfer problem.
// Total excitation (Rydberg count + photon count) is 2 throughout.

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wst {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

enum class Atom : char { g = 'g', r = 'r' };

// Ordered triple of atomic levels (atom 1, 2, 3).
struct AtomConfig {
    std::array<Atom, 3> labels;

    int rydberg_count() const;
    std::string str() const;  // e.g. "rrg"
    bool operator==(const AtomConfig&) const = default;
};

AtomConfig atoms_from_string(const std::string& s);

// Ordered triple of photon numbers (mode 1, 2, 3); total capped at 2.
struct FockConfig {
    std::array<int, 3> photons;

    int total() const { return photons[0] + photons[1] + photons[2]; }
    std::string str() const;  // e.g. "110"
    bool operator==(const FockConfig&) const = default;
};

FockConfig fock_from_string(const std::string& s);

enum class Manifold { P0, P1, P2 };

struct BasisState {
    AtomConfig atoms;
    FockConfig fock;
    Manifold manifold;
    int index;  // ordinal in canonical order

    std::string label() const;  // "rrg|000"
};

// Canonical 17-state basis: 0P block {rrg,rgr,grr}x{000}, then the 9 1P states
// (atoms rgg,grg,ggr x photons 100,010,001), then |ggg> x {110,101,011,200,020}.
const std::vector<BasisState>& basis17();

// Index of a state in the canonical order; throws if the labels are not in the basis.
int basis_index(const AtomConfig& a, const FockConfig& f);
int basis_index(const std::string& label);  // "rrg|000"

// Nearest-neighbour pairs (1,2),(2,3) contribute V1 each; pair (1,3) contributes V2.
double rydberg_shift(const AtomConfig& atoms, double V1, double V2);

// (|rrg>+|rgr>+|grr>)/sqrt(3) (x) |000> on the 17-state basis.
Vec w_state_atomic();

// |ggg> (x) (|110>+|101>+|011>)/sqrt(3).
Vec w_state_photonic();

// |<a|b>|^2; requires equal dimensions and normalized inputs.
double fidelity(const Vec& a, const Vec& b);

double norm_sq(const Vec& v);

}  // namespace wst
