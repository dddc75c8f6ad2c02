#include "wst/basis.hpp"

#include <stdexcept>

namespace wst {

int AtomConfig::rydberg_count() const {
    int n = 0;
    for (Atom a : labels)
        if (a == Atom::r) ++n;
    return n;
}

std::string AtomConfig::str() const {
    std::string s(3, 'g');
    for (int i = 0; i < 3; ++i) s[i] = static_cast<char>(labels[i]);
    return s;
}

AtomConfig atoms_from_string(const std::string& s) {
    if (s.size() != 3) throw std::invalid_argument("atom config needs 3 letters: " + s);
    AtomConfig a{};
    for (int i = 0; i < 3; ++i) {
        if (s[i] != 'g' && s[i] != 'r') throw std::invalid_argument("atom label must be g or r: " + s);
        a.labels[i] = s[i] == 'r' ? Atom::r : Atom::g;
    }
    return a;
}

std::string FockConfig::str() const {
    std::string s;
    for (int n : photons) s += static_cast<char>('0' + n);
    return s;
}

FockConfig fock_from_string(const std::string& s) {
    if (s.size() != 3) throw std::invalid_argument("fock config needs 3 digits: " + s);
    FockConfig f{};
    for (int i = 0; i < 3; ++i) {
        int n = s[i] - '0';
        if (n < 0 || n > 2) throw std::invalid_argument("photon count out of range: " + s);
        f.photons[i] = n;
    }
    return f;
}

std::string BasisState::label() const { return atoms.str() + "|" + fock.str(); }

namespace {

std::vector<BasisState> make_basis() {
    std::vector<BasisState> basis;
    auto add = [&](const char* a, const char* f, Manifold m) {
        basis.push_back({atoms_from_string(a), fock_from_string(f), m, static_cast<int>(basis.size())});
    };
    // 0P: two Rydberg excitations, vacuum cavity
    add("rrg", "000", Manifold::P0);
    add("rgr", "000", Manifold::P0);
    add("grr", "000", Manifold::P0);
    // 1P: one Rydberg excitation, one photon
    for (const char* a : {"rgg", "grg", "ggr"})
        for (const char* f : {"100", "010", "001"}) add(a, f, Manifold::P1);
    // 2P: all ground, two photons (200/020 kept as leakage monitors)
    for (const char* f : {"110", "101", "011", "200", "020"}) add("ggg", f, Manifold::P2);
    return basis;
}

}  // namespace

const std::vector<BasisState>& basis17() {
    static const std::vector<BasisState> basis = make_basis();
    return basis;
}

int basis_index(const AtomConfig& a, const FockConfig& f) {
    for (const auto& s : basis17())
        if (s.atoms == a && s.fock == f) return s.index;
    throw std::invalid_argument("state not in the 17-state basis: " + a.str() + "|" + f.str());
}

int basis_index(const std::string& label) {
    auto bar = label.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("label must be atoms|fock: " + label);
    return basis_index(atoms_from_string(label.substr(0, bar)), fock_from_string(label.substr(bar + 1)));
}

double rydberg_shift(const AtomConfig& atoms, double V1, double V2) {
    auto rr = [&](int i, int j) {
        return atoms.labels[i] == Atom::r && atoms.labels[j] == Atom::r ? 1.0 : 0.0;
    };
    return V1 * (rr(0, 1) + rr(1, 2)) + V2 * rr(0, 2);
}

Vec w_state_atomic() {
    Vec v = Vec::Zero(17);
    const double c = 1.0 / std::sqrt(3.0);
    v[basis_index("rrg|000")] = c;
    v[basis_index("rgr|000")] = c;
    v[basis_index("grr|000")] = c;
    return v;
}

Vec w_state_photonic() {
    Vec v = Vec::Zero(17);
    const double c = 1.0 / std::sqrt(3.0);
    v[basis_index("ggg|110")] = c;
    v[basis_index("ggg|101")] = c;
    v[basis_index("ggg|011")] = c;
    return v;
}

double fidelity(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("fidelity: incompatible spaces (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    return std::norm(a.dot(b));
}

double norm_sq(const Vec& v) { return v.squaredNorm(); }

}  // namespace wst
