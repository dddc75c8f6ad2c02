// drive.hpp
// Time-dependent coupling envelopes and chirped mode-frequency offsets, with the
// named protocol presets and the two analytic scheduling constraints.
//
// All quantities are dimensionless; rates and frequencies share one unit and
// time is its inverse (the figure-caption numbers are literal).

#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wst {

using Complex = std::complex<double>;

struct GaussianPulse {
    double amplitude = 0;  // A, value at the center
    double center = 0;     // t_c (absolute time)
    double width = 1;      // tau; FWHM = sqrt(2) tau ... exp(-(t-tc)^2 / (2 tau^2))

    double operator()(double t) const;
    Complex operator()(Complex t) const;  // analytic continuation
    double derivative(double t) const;
};

struct SumOfGaussians {
    std::vector<GaussianPulse> terms;

    double operator()(double t) const;
    Complex operator()(Complex t) const;
    double derivative(double t) const;
    double peak_amplitude() const;  // max of term amplitudes
};

// w'(t) = slope * (t - zero_time) + offset; constant chirps have slope = 0.
struct LinearChirp {
    double slope = 0;
    double zero_time = 0;
    double offset = 0;

    double operator()(double t) const { return slope * (t - zero_time) + offset; }
    Complex operator()(Complex t) const { return slope * (t - zero_time) + offset; }
};

struct DriveSchedule {
    std::array<SumOfGaussians, 3> g;     // coupling envelopes g1, g2, g3
    std::array<LinearChirp, 3> omega;    // residual frequency offsets w1', w2', w3'
    double t_start = 0;
    double t_end = 0;
};

double eval_coupling(const DriveSchedule& s, int mode, double t);
double eval_chirp(const DriveSchedule& s, int mode, double t);

enum class ProtocolKind { adiabatic, nonadiabatic };

// Signed one-photon detunings for one stage (two-photon resonance conventions:
// stage 1: delta2 = delta3 = -delta1; stage 2: delta3 = -delta2).
struct StageDetunings {
    double delta1 = 0, delta2 = 0, delta3 = 0;
};

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::adiabatic;
    std::string name;
    DriveSchedule stage1, stage2;
    StageDetunings det1, det2;
    double V1 = 0, V2 = 0, V3 = 0;  // Rydberg shifts; V3 defaults to V1 (undefined in source)
    double D = 0;                   // stage-2 parked offset of mode 1 (diagnostics only)
    double V12 = 0;                 // inter-stage remap constant for mode 2 (diagnostics only)
    double gap = 0;                 // t2 - t1; 0 = instantaneous remap
    std::array<double, 3> gap_mode_phases{0, 0, 0};  // \int_gap wi' dt (diagonal only)
    bool align_gap_phases = false;  // solve gap phases from the ledger before stage 2

    double t0() const { return stage1.t_start; }
    double t1() const { return stage1.t_end; }
    double t2() const { return stage2.t_start; }
    double t3() const { return stage2.t_end; }
    int stage_of(double t) const { return t < stage1.t_end ? 1 : 2; }
    const DriveSchedule& stage(int i) const { return i == 1 ? stage1 : stage2; }
    const StageDetunings& detunings(int i) const { return i == 1 ? det1 : det2; }
    // 1P intermediate detuning (the positive Delta on the printed diagonals).
    double intermediate_detuning(int stage) const { return stage == 1 ? det1.delta2 : det2.delta3; }

    void validate() const;  // resonance conventions, window ordering, envelope decay
};

// t_p2 = sqrt(| (t_s tau_s / tau_p2)^2 - 2 tau_p2^2 log|A_p2 / A_s| |).
// Pulse-convergence constraint: makes the Stokes/pump Stark shifts cancel
// uniformly away from the crossing.
double fstirap_convergence_offset(double A_s, double A_p2, double t_s, double tau_s, double tau_p2);

// t_alpha = (t_p tau_s^2 + t_s tau_p^2)/(tau_s^2 + tau_p^2)
//         + 3 (|g_p(t_c)|^2 - |g_s(t_c)|^2) / (2 delta1 alpha0),
// aligning the zero of the bright-pair diabatic energy with the coupling max.
// delta1 is the signed detuning (negative in the stage-1 conventions).
double crossing_alignment_offset(const GaussianPulse& stokes, const GaussianPulse& pump,
                                 double delta1, double alpha0);

// Places the avoided crossing of the bright pair (Stokes/pump legs given) so the
// model transition probability equals 1/2, by bisection on the Dykhne contour
// probability. Returns the chirp zero time (absolute), the crossing location and
// the achieved model probability. Used by the non-adiabatic preset, whose figure
// caption leaves the chirp offset unconstrained.
struct HalfTransitionDesign {
    double t_alpha = 0;
    double t_cross = 0;
    double probability = 0;
};
HalfTransitionDesign solve_half_transition_offset(const SumOfGaussians& stokes,
                                                  const SumOfGaussians& pump, double delta,
                                                  double alpha0, double tau);

// Named caption parameter sets; overrides layer on top by dotted key
// (e.g. "stage1.A_p1"). NaN-valued keys mean "derive from the constraints".
struct ProtocolConfig {
    std::string preset;                     // "adiabatic" | "nonadiabatic"
    std::map<std::string, double> params;   // resolved named parameters

    static ProtocolConfig named(const std::string& preset);
    void override_param(const std::string& dotted_key, double value);
};

ProtocolSpec build_protocol(const ProtocolConfig& config);
ProtocolSpec preset(const std::string& name);  // build_protocol(ProtocolConfig::named(name))

std::string to_json_string(const ProtocolConfig& c);
ProtocolConfig config_from_json_string(const std::string& text);

}  // namespace wst
