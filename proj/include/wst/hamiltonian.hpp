// hamiltonian.hpp
// Subsystem Hamiltonians (5x5/6x6), the 17x17 stage assembly, second-order
// effective reductions (2x2/3x3) with their Stark diagonals, and the
// Morris-Shore decoupling of the degenerate-pair three-level systems.

#pragma once

#include <array>
#include <vector>

#include "wst/basis.hpp"
#include "wst/drive.hpp"

namespace wst {

enum class SubsystemId { S11, S12, S21, S22 };

int subsystem_stage(SubsystemId id);
const char* subsystem_name(SubsystemId id);

// Unreduced subsystem basis: indices into the canonical 17-state basis, in the
// row order of the printed matrices.
const std::vector<int>& subsystem_indices(SubsystemId id);

// Positions (within the unreduced block) of the retained states, ordered as the
// effective basis: S11 {rgr,110}; S12 {rrg,grr,101}; S21 {101,110}; S22 {rrg,grr,011}.
const std::vector<int>& retained_positions(SubsystemId id);

// The printed 5x5/6x6 matrix of the subsystem at time t. Throws if t lies
// outside the subsystem's stage window.
Mat subsystem_hamiltonian(const ProtocolSpec& spec, SubsystemId id, double t);

// Stage-resolved 17x17 assembly. Stage 1: direct sum of S11 and S12 on their
// bases. Stage 2: S22 block plus the dressed one-level pair for S21 (the
// printed 5x5 shares its mode-1 intermediates between both 2P legs, which
// would open a spurious resonant 110<->101 exchange; the propagated model uses
// the dressed diagonal form instead, see notes). Remaining states are diagonal.
Mat full_hamiltonian(const ProtocolSpec& spec, double t);

// In-subsystem dispersive diagonal <s|H_S|s>(t): the second-order Stark shift
// of a retained state from its own subsystem's intermediates. Equals
// perturbation theory on the printed matrices. Throws for states that are not
// retained in the stage containing t.
double stark_diagonal(const BasisState& state, const ProtocolSpec& spec, double t);
double stark_diagonal(int basis_index, const ProtocolSpec& spec, double t);

// 0P intra-manifold exchange parameter g3(t)^2 / Delta for the stage at t
// (positive convention; the matrix element it produces is its negative).
double off_manifold_coupling(const ProtocolSpec& spec, double t);

struct EffectiveSubsystem {
    SubsystemId id = SubsystemId::S11;
    int dim = 2;
    Mat h;                  // effective matrix, elimination signs
    double g_eff = 0;       // 2 g_a g_b / Delta  (positive parameter)
    double g_eff_33 = 0;    // g3^2 / Delta       (three-level only)
    double delta_eff = 0;
    double delta_0 = 0;
    double delta_tilde = 0;  // delta_eff + g_eff_33 / 2
    bool regime_warning = false;  // max coupling exceeds 0.2 |Delta|
};

EffectiveSubsystem effective_h(const ProtocolSpec& spec, SubsystemId id, double t);

struct MorrisShoreResult {
    Eigen::Matrix3cd rotation;   // {a,b,c} -> {dark, bright, target}
    double dark_rate = 0;        // frame phase rate removed from the dark state
    double pair_rate = 0;        // frame phase rate removed from bright/target
    double dark_energy = 0;      // transformed dark eigenvalue: -delta_tilde
    double delta_tilde = 0;
    double bright_coupling = 0;  // signed sqrt(2) g13 element
    Mat transformed;             // 3x3 with the dark row/column decoupled
    Eigen::Matrix2cd bright_h;   // 2x2 on {bright, target}
};

// Decouples the dark state of a degenerate-pair 3x3 (equal diagonal on states
// 1,2 and equal couplings to state 3). Throws if the structure is violated
// beyond 1e-10 relative.
MorrisShoreResult morris_shore(const Mat& h3);

// Full multi-mode dispersive operator on the 17-state basis (stage-1 mode
// mapping, V3 from the spec). Diagnostic only; propagation uses the
// in-subsystem form. Throws if any denominator vanishes.
Mat dispersive_stark_matrix(const ProtocolSpec& spec, double t);

}  // namespace wst
