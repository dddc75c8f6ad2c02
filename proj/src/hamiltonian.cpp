#include "wst/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace wst {

int subsystem_stage(SubsystemId id) {
    return (id == SubsystemId::S11 || id == SubsystemId::S12) ? 1 : 2;
}

const char* subsystem_name(SubsystemId id) {
    switch (id) {
        case SubsystemId::S11: return "S11";
        case SubsystemId::S12: return "S12";
        case SubsystemId::S21: return "S21";
        case SubsystemId::S22: return "S22";
    }
    return "?";
}

const std::vector<int>& subsystem_indices(SubsystemId id) {
    static const std::vector<int> s11 = {
        basis_index("rgr|000"), basis_index("rgg|010"), basis_index("ggr|010"),
        basis_index("grg|010"), basis_index("ggg|110")};
    static const std::vector<int> s12 = {
        basis_index("grr|000"), basis_index("rrg|000"), basis_index("ggr|001"),
        basis_index("grg|001"), basis_index("rgg|001"), basis_index("ggg|101")};
    static const std::vector<int> s21 = {
        basis_index("ggg|101"), basis_index("ggg|110"), basis_index("rgg|100"),
        basis_index("ggr|100"), basis_index("grg|100")};
    static const std::vector<int> s22 = {
        basis_index("grr|000"), basis_index("rrg|000"), basis_index("ggr|001"),
        basis_index("grg|001"), basis_index("rgg|001"), basis_index("ggg|011")};
    switch (id) {
        case SubsystemId::S11: return s11;
        case SubsystemId::S12: return s12;
        case SubsystemId::S21: return s21;
        case SubsystemId::S22: return s22;
    }
    throw std::logic_error("bad subsystem id");
}

const std::vector<int>& retained_positions(SubsystemId id) {
    static const std::vector<int> s11 = {0, 4};
    static const std::vector<int> s12 = {1, 0, 5};  // rrg, grr, 101
    static const std::vector<int> s21 = {0, 1};
    static const std::vector<int> s22 = {1, 0, 5};  // rrg, grr, 011
    switch (id) {
        case SubsystemId::S11: return s11;
        case SubsystemId::S12: return s12;
        case SubsystemId::S21: return s21;
        case SubsystemId::S22: return s22;
    }
    throw std::logic_error("bad subsystem id");
}

namespace {

void check_stage(const ProtocolSpec& spec, SubsystemId id, double t) {
    int stage = subsystem_stage(id);
    if (spec.stage_of(t) != stage)
        throw std::invalid_argument(std::string(subsystem_name(id)) + " evaluated outside stage " +
                                    std::to_string(stage));
}

}  // namespace

Mat subsystem_hamiltonian(const ProtocolSpec& spec, SubsystemId id, double t) {
    check_stage(spec, id, t);
    int stage = subsystem_stage(id);
    const DriveSchedule& s = spec.stage(stage);
    const StageDetunings& det = spec.detunings(stage);
    double g1 = s.g[0](t), g2 = s.g[1](t), g3 = s.g[2](t);
    double w1 = s.omega[0](t), w2 = s.omega[1](t), w3 = s.omega[2](t);

    switch (id) {
        case SubsystemId::S11: {
            double delta1 = det.delta1 + det.delta2;  // two-photon defect, zero on resonance
            Mat h = Mat::Zero(5, 5);
            h(0, 0) = -w2;
            h(1, 1) = h(2, 2) = h(3, 3) = det.delta2;
            h(4, 4) = w1 + delta1;
            h(0, 1) = h(1, 0) = g2;
            h(0, 2) = h(2, 0) = g2;
            h(4, 1) = h(1, 4) = g1;
            h(4, 2) = h(2, 4) = g1;
            h(4, 3) = h(3, 4) = g1;
            return h;
        }
        case SubsystemId::S12: {
            double delta2 = det.delta1 + det.delta3;
            Mat h = Mat::Zero(6, 6);
            h(0, 0) = h(1, 1) = -w3;
            h(2, 2) = h(3, 3) = h(4, 4) = det.delta3;
            h(5, 5) = w1 + delta2;
            h(0, 2) = h(2, 0) = g3;
            h(0, 3) = h(3, 0) = g3;
            h(1, 3) = h(3, 1) = g3;
            h(1, 4) = h(4, 1) = g3;
            h(5, 2) = h(2, 5) = g1;
            h(5, 3) = h(3, 5) = g1;
            h(5, 4) = h(4, 5) = g1;
            return h;
        }
        case SubsystemId::S21: {
            Mat h = Mat::Zero(5, 5);
            h(0, 0) = w3;
            h(1, 1) = w2;
            h(2, 2) = h(3, 3) = h(4, 4) = det.delta2;
            for (int k = 2; k < 5; ++k) {
                h(0, k) = h(k, 0) = g3;
                h(1, k) = h(k, 1) = g2;
            }
            return h;
        }
        case SubsystemId::S22: {
            double delta3 = det.delta2 + det.delta3;
            Mat h = Mat::Zero(6, 6);
            h(0, 0) = h(1, 1) = -w3;
            h(2, 2) = h(3, 3) = h(4, 4) = det.delta3;
            h(5, 5) = w2 + delta3;
            h(0, 2) = h(2, 0) = g3;
            h(0, 3) = h(3, 0) = g3;
            h(1, 3) = h(3, 1) = g3;
            h(1, 4) = h(4, 1) = g3;
            h(5, 2) = h(2, 5) = g2;
            h(5, 3) = h(3, 5) = g2;
            h(5, 4) = h(4, 5) = g2;
            return h;
        }
    }
    throw std::logic_error("bad subsystem id");
}

double stark_diagonal(int idx, const ProtocolSpec& spec, double t) {
    int stage = spec.stage_of(t);
    const DriveSchedule& s = spec.stage(stage);
    const StageDetunings& det = spec.detunings(stage);
    double g1 = s.g[0](t), g2 = s.g[1](t), g3 = s.g[2](t);
    const std::string label = basis17()[idx].label();

    if (stage == 1) {
        double delta = det.delta2;  // 1P diagonal of both stage-1 subsystems
        if (label == "rgr|000") return -2.0 * g2 * g2 / delta;
        if (label == "ggg|110") return -3.0 * g1 * g1 / delta;
        if (label == "rrg|000" || label == "grr|000") return -2.0 * g3 * g3 / delta;
        if (label == "ggg|101") return -3.0 * g1 * g1 / delta;
    } else {
        if (label == "ggg|101") return -3.0 * g3 * g3 / det.delta2;
        if (label == "ggg|110") return -3.0 * g2 * g2 / det.delta2;
        if (label == "rrg|000" || label == "grr|000") return -2.0 * g3 * g3 / det.delta3;
        if (label == "ggg|011") return -3.0 * g2 * g2 / det.delta3;
    }
    throw std::invalid_argument("stark_diagonal: " + label + " is not retained in stage " +
                                std::to_string(stage));
}

double stark_diagonal(const BasisState& state, const ProtocolSpec& spec, double t) {
    return stark_diagonal(state.index, spec, t);
}

double off_manifold_coupling(const ProtocolSpec& spec, double t) {
    int stage = spec.stage_of(t);
    double g3 = spec.stage(stage).g[2](t);
    return g3 * g3 / spec.intermediate_detuning(stage);
}

Mat full_hamiltonian(const ProtocolSpec& spec, double t) {
    int stage = spec.stage_of(t);
    const DriveSchedule& s = spec.stage(stage);
    const StageDetunings& det = spec.detunings(stage);
    Mat h = Mat::Zero(17, 17);

    // spectator diagonals: 1P states by photon mode, 2P by chirp sums
    for (const BasisState& b : basis17()) {
        if (b.manifold == Manifold::P1) {
            int mode = b.fock.photons[0] ? 1 : (b.fock.photons[1] ? 2 : 3);
            double d = mode == 1 ? det.delta1 : (mode == 2 ? det.delta2 : det.delta3);
            h(b.index, b.index) = d;
        } else if (b.manifold == Manifold::P2) {
            double w = 0;
            for (int m = 0; m < 3; ++m) w += b.fock.photons[m] * s.omega[m](t);
            h(b.index, b.index) = w;
        }
    }

    auto place = [&](SubsystemId id) {
        const auto& idx = subsystem_indices(id);
        Mat sub = subsystem_hamiltonian(spec, id, t);
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c) h(idx[r], idx[c]) = sub(r, c);
    };

    if (stage == 1) {
        place(SubsystemId::S11);
        place(SubsystemId::S12);
    } else {
        place(SubsystemId::S22);
        // S21 in the dressed one-level form (1Devo): the printed 5x5 shares its
        // intermediates between the two 2P legs, which would produce a resonant
        // spurious 110<->101 exchange.
        double g2 = s.g[1](t), g3 = s.g[2](t);
        int i101 = basis_index("ggg|101"), i110 = basis_index("ggg|110");
        h(i101, i101) = s.omega[2](t) - 3.0 * g3 * g3 / det.delta2;
        h(i110, i110) = s.omega[1](t) - 3.0 * g2 * g2 / det.delta2;
        for (const char* l : {"rgg|100", "ggr|100", "grg|100"}) {
            int i = basis_index(l);
            h(i, i) = det.delta2;
        }
    }
    return h;
}

EffectiveSubsystem effective_h(const ProtocolSpec& spec, SubsystemId id, double t) {
    check_stage(spec, id, t);
    int stage = subsystem_stage(id);
    const DriveSchedule& s = spec.stage(stage);
    const StageDetunings& det = spec.detunings(stage);
    double g1 = s.g[0](t), g2 = s.g[1](t), g3 = s.g[2](t);
    double w1 = s.omega[0](t), w2 = s.omega[1](t), w3 = s.omega[2](t);
    double delta = spec.intermediate_detuning(stage);

    EffectiveSubsystem e;
    e.id = id;
    e.regime_warning = std::max({std::abs(g1), std::abs(g2), std::abs(g3)}) > 0.2 * std::abs(delta);

    auto fill2 = [&](double ea, double eb, double coupling) {
        e.dim = 2;
        e.h = Mat::Zero(2, 2);
        e.h(0, 0) = ea;
        e.h(1, 1) = eb;
        e.h(0, 1) = e.h(1, 0) = coupling;
        e.delta_eff = 0.5 * (eb - ea);
        e.delta_0 = 0.5 * (ea + eb);
        e.delta_tilde = e.delta_eff;
    };
    auto fill3 = [&](double ea, double ec, double x33, double x13) {
        e.dim = 3;
        e.h = Mat::Zero(3, 3);
        e.h(0, 0) = e.h(1, 1) = ea;
        e.h(2, 2) = ec;
        e.h(0, 1) = e.h(1, 0) = x33;
        e.h(0, 2) = e.h(2, 0) = x13;
        e.h(1, 2) = e.h(2, 1) = x13;
        e.delta_eff = 0.5 * (ec - ea);
        e.delta_0 = 0.5 * (ea + ec);
        e.g_eff_33 = -x33;  // positive parameter g3^2 / Delta
        e.delta_tilde = e.delta_eff + 0.5 * e.g_eff_33;
    };

    switch (id) {
        case SubsystemId::S11:
            fill2(-w2 - 2.0 * g2 * g2 / delta, w1 - 3.0 * g1 * g1 / delta, -2.0 * g1 * g2 / delta);
            e.g_eff = 2.0 * g1 * g2 / delta;
            break;
        case SubsystemId::S12:
            fill3(-w3 - 2.0 * g3 * g3 / delta, w1 - 3.0 * g1 * g1 / delta, -g3 * g3 / delta,
                  -2.0 * g1 * g3 / delta);
            e.g_eff = 2.0 * g1 * g3 / delta;
            break;
        case SubsystemId::S21:
            fill2(w3 - 3.0 * g3 * g3 / det.delta2, w2 - 3.0 * g2 * g2 / det.delta2, 0.0);
            e.g_eff = 0.0;
            break;
        case SubsystemId::S22:
            fill3(-w3 - 2.0 * g3 * g3 / delta, w2 - 3.0 * g2 * g2 / delta, -g3 * g3 / delta,
                  -2.0 * g2 * g3 / delta);
            e.g_eff = 2.0 * g2 * g3 / delta;
            break;
    }
    return e;
}

MorrisShoreResult morris_shore(const Mat& h3) {
    if (h3.rows() != 3 || h3.cols() != 3) throw std::invalid_argument("morris_shore: need a 3x3");
    double scale = h3.cwiseAbs().maxCoeff() + 1e-30;
    if (std::abs(h3(0, 0) - h3(1, 1)) > 1e-10 * scale ||
        std::abs(h3(0, 2) - h3(1, 2)) > 1e-10 * scale)
        throw std::invalid_argument("morris_shore: degenerate-pair structure violated");

    double ea = h3(0, 0).real(), ec = h3(2, 2).real();
    double x33 = h3(0, 1).real(), x13 = h3(0, 2).real();
    double delta_eff = 0.5 * (ec - ea);
    double delta_0 = 0.5 * (ea + ec);
    double g33 = -x33;  // positive for the elimination signs

    MorrisShoreResult r;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    r.rotation.setZero();
    r.rotation(0, 0) = inv_sqrt2;   // dark  = (a - b)/sqrt(2)
    r.rotation(0, 1) = -inv_sqrt2;
    r.rotation(1, 0) = inv_sqrt2;   // bright = (a + b)/sqrt(2)
    r.rotation(1, 1) = inv_sqrt2;
    r.rotation(2, 2) = 1.0;

    r.delta_tilde = delta_eff + 0.5 * g33;
    r.dark_rate = delta_0 - 1.5 * x33;  // x33 signed: = delta_0 + 3 g33 / 2
    r.pair_rate = delta_0 + 0.5 * x33;
    r.dark_energy = -r.delta_tilde;
    r.bright_coupling = std::sqrt(2.0) * x13;

    r.transformed = Mat::Zero(3, 3);
    r.transformed(0, 0) = -r.delta_tilde;
    r.transformed(1, 1) = -r.delta_tilde;
    r.transformed(2, 2) = r.delta_tilde;
    r.transformed(1, 2) = r.transformed(2, 1) = r.bright_coupling;

    r.bright_h.setZero();
    r.bright_h(0, 0) = -r.delta_tilde;
    r.bright_h(1, 1) = r.delta_tilde;
    r.bright_h(0, 1) = r.bright_h(1, 0) = r.bright_coupling;
    return r;
}

Mat dispersive_stark_matrix(const ProtocolSpec& spec, double t) {
    const DriveSchedule& s = spec.stage1;
    const StageDetunings& det = spec.det1;
    double g[3] = {s.g[0](t), s.g[1](t), s.g[2](t)};
    double d1 = det.delta1, d2 = det.delta2, d3 = det.delta3;
    double V1 = spec.V1, V2 = spec.V2, V3 = spec.V3;

    // per-mode denominators for the A1/A2/A3 blocks; + rows (a^dag a) then - rows (a a^dag)
    const double den_plus[3][3] = {{d1, d1 - V2, d1 - V1},
                                   {V2 + d2, d2, d2 + V2 - V3},
                                   {V1 + d2, d2 + V3 - V2, d3}};
    const double den_minus[3][3] = {{d1, d1 - V2, d1 - V1},
                                    {V2 + d2, d2, d2 + V2 - V1},
                                    {V1 + d2, d2 + V3 - V2, d3}};
    for (auto& row : den_plus)
        for (double d : row)
            if (d == 0.0) throw std::runtime_error("dispersive_stark_matrix: vanishing denominator");
    for (auto& row : den_minus)
        for (double d : row)
            if (d == 0.0) throw std::runtime_error("dispersive_stark_matrix: vanishing denominator");

    auto a_plus = [](int k, const AtomConfig& a) -> double {
        std::string l = a.str();
        switch (k) {
            case 0: return l == "ggg" ? 3.0 : 0.0;
            case 1: return (l == "rgg" || l == "ggr") ? 1.0 : 0.0;
            default: return l == "rgg" || l == "ggr" ? 1.0 : (l == "grg" ? 2.0 : 0.0);
        }
    };
    auto a_minus_diag = [](int k, const AtomConfig& a) -> double {
        std::string l = a.str();
        switch (k) {
            case 0: return (l == "rgg" || l == "grg" || l == "ggr") ? 1.0 : 0.0;
            case 1: return l == "rgr" ? 2.0 : 0.0;
            default: return (l == "rrg" || l == "grr") ? 2.0 : 0.0;
        }
    };

    Mat h = Mat::Zero(17, 17);
    for (const BasisState& b : basis17()) {
        double e = 0;
        for (int m = 0; m < 3; ++m) {
            double n = b.fock.photons[m];
            double gg = g[m] * g[m];
            for (int k = 0; k < 3; ++k) {
                e += n * gg / den_plus[m][k] * a_plus(k, b.atoms);
                e -= (n + 1.0) * gg / den_minus[m][k] * a_minus_diag(k, b.atoms);
            }
        }
        h(b.index, b.index) = e;
    }
    // A3- exchange between |rrg,000> and |grr,000>
    double ex = 0;
    for (int m = 0; m < 3; ++m) ex -= g[m] * g[m] / den_minus[m][2];
    int i = basis_index("rrg|000"), j = basis_index("grr|000");
    h(i, j) = h(j, i) = ex;
    return h;
}

}  // namespace wst
