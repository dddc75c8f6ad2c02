// crossings.hpp
// Avoided-crossing analysis for a two-level system H = [[-d(t), v(t)], [v(t), d(t)]]:
// mixing angles, adiabaticity, Landau-Zener and Dykhne transition probabilities,
// Lambert-W turning points and adiabatic-impulse transfer matrices.
//
// Everything here takes plain evaluators, so it works for any effective pair
// (bright-pair 3-level reductions included after Morris-Shore).

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace wst {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

// Real-time evaluators for the pair: detuning d(t) (half the diabatic splitting)
// and coupling v(t). Complex-time versions are analytic continuations, used by
// the Dykhne contour machinery.
struct TwoLevelParams {
    std::function<double(double)> detuning;
    std::function<double(double)> coupling;
    std::function<Complex(Complex)> detuning_c;  // optional, needed for Dykhne
    std::function<Complex(Complex)> coupling_c;

    double adiabatic_energy(double t) const;  // A = sqrt(d^2 + v^2)
};

struct DiabaticAdiabaticCurves {
    std::vector<double> t;
    std::vector<double> d1, d2;      // diabatic energies -/+ A cos 2phi
    std::vector<double> e_minus, e_plus;
    std::vector<double> phi;         // mixing angle, continuous branch
};

DiabaticAdiabaticCurves sample_curves(const TwoLevelParams& p, double t0, double t1, int n);

// phi = atan2(|v|, d)/2, in [0, pi/2]; throws if both arguments vanish.
double mixing_angle(double detuning, double coupling);

// zeta(t) = |dphi/dt / (2A)| by centered differences on a uniform grid.
std::vector<double> adiabaticity(const std::vector<double>& t, const std::vector<double>& phi,
                                 const std::vector<double>& a);

// Closed-form Landau-Zener probability exp(-2 pi (2 Ap As / Delta1)^2 / alpha0)
// with validity flag 2C^2 <= 0.05, C = sqrt(8) Ap As / (|Delta1| alpha0 tau_p).
struct LzResult {
    double probability;
    double C;
    bool valid;  // 2C^2 <= 0.05
};
LzResult lz_probability(double A_pump, double A_stokes, double delta1, double alpha0, double tau_p);

// Real branches of the Lambert W function (W e^W = x), Halley iteration.
// branch 0: x >= -1/e; branch -1: -1/e <= x < 0.
double lambert_w(int branch, double x);

struct TurningPoint {
    Complex z0;      // scaled complex time
    int branch;
    bool branch_degenerate;  // 2C^2 > 1/e: higher branches contribute
};

// Principal turning point of A(z)^2 = (alpha0 tau^2)^2 ((z + i z_alpha)^2 - C^2 e^{2 z^2} ...)
// in the canonical scaled model where the coupling is C e^{z^2} and the detuning z + i z_alpha.
// Solves via W_0 seed, then Newton refinement on the full model.
TurningPoint turning_point(double C, double z_alpha = 0.0);

// Model evaluator for the canonical scaled crossing (used for residual checks).
Complex canonical_a(double C, double z_alpha, Complex z);

// exp(-2 Im \int 2A(z) dz) along: real axis up to Re z0 (no Im contribution for
// Hermitian input), then the segment from Re z0 (+ i*0) .. z0 parameterized per
// the horizontal-path prescription. `a_eval` must return the adiabatic energy
// A(z) analytically continued, branch-continuous along the path.
double dykhne_probability(const std::function<Complex(Complex)>& a_eval, Complex z0, int n_quad = 400);

// Dykhne probability directly from real-time schedule evaluators: rescales
// t = t_cross + i*tau_scale*z, locates the turning point from the seed, and
// integrates. Returns probability and the located turning point.
struct DykhneResult {
    double probability;
    Complex z0;        // in the scaled coordinates
    Complex t0;        // complex time
};
DykhneResult dykhne_from_pair(const TwoLevelParams& p, double t_cross, double tau_scale,
                              double seed_im = 0.1);

struct TransferMatrix {
    double R = 1.0;
    double T = 0.0;
    double stokes_phase = 0.0;  // phi_S

    Mat2 matrix() const;  // [[R e^{-i phi_S}, -T], [T, R e^{i phi_S}]]
};

// Propagates the pair over [ta, tb] (fixed-step unitary midpoint rule) and
// returns the full 2x2 evolution in the *diabatic* basis.
Mat2 propagate_pair(const TwoLevelParams& p, double ta, double tb, double dt);

// Non-adiabatic transition probability from direct propagation: start in the
// adiabatic state continuing from the lower/upper branch at ta, report the
// final population transferred to the other adiabatic branch at tb.
double propagated_transition_probability(const TwoLevelParams& p, double ta, double tb, double dt);

// Least-squares extraction of N = U_+^dag U_prop U_-^dag over [t-, t+]:
// U_prop from propagation, U_± the adiabatic-phase propagators on [t-,tc],[tc,t+].
TransferMatrix extract_transfer_matrix(const TwoLevelParams& p, double t_minus, double t_plus,
                                       double t_cross, double dt);

// U_+ N U_-  (all in the adiabatic basis); inputs must be unitary within 1e-8.
Mat2 aia_compose(const Mat2& u_minus, const TransferMatrix& n, const Mat2& u_plus);

// Adiabatic-segment propagator exp(-i * integral (E+ - E-)/2 * sigma_z) for [ta, tb].
Mat2 adiabatic_segment(const TwoLevelParams& p, double ta, double tb, int n_quad = 200);

}  // namespace wst
