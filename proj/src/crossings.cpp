#include "wst/crossings.hpp"

#include <cmath>
#include <stdexcept>

#include "wst/numerics.hpp"

namespace wst {

namespace {

double simpson_series(const std::vector<double>& x, const std::vector<double>& y) {
    // composite trapezoid is enough for dense series; kept simple
    double s = 0;
    for (size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        int max_depth) {
    struct Impl {
        const std::function<double(double)>& f;
        double rel_tol;
        double recurse(double a, double m, double b, double fa, double fm, double fb, double whole,
                       int depth) {
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
            double err = left + right - whole;
            if (depth <= 0 || std::abs(err) <= 15.0 * rel_tol * (std::abs(left + right) + 1e-300))
                return left + right + err / 15.0;
            return recurse(a, lm, m, fa, flm, fm, left, depth - 1) +
                   recurse(m, rm, b, fm, frm, fb, right, depth - 1);
        }
    } impl{f, rel_tol};
    double m = 0.5 * (a + b), fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return impl.recurse(a, m, b, fa, fm, fb, whole, max_depth);
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw std::invalid_argument("bisect: endpoints do not bracket a root");
    for (int i = 0; i < max_iter && (b - a) > tol * (1 + std::abs(a) + std::abs(b)); ++i) {
        double m = 0.5 * (a + b), fm = f(m);
        if (fm == 0) return m;
        (fa * fm < 0 ? b : a) = m;
        (fa * fm < 0 ? fb : fa) = fm;
    }
    return 0.5 * (a + b);
}

double TwoLevelParams::adiabatic_energy(double t) const {
    return std::hypot(detuning(t), coupling(t));
}

double mixing_angle(double d, double v) {
    if (d == 0.0 && v == 0.0) throw std::invalid_argument("mixing_angle: undefined at (0,0)");
    return 0.5 * std::atan2(std::abs(v), d);
}

DiabaticAdiabaticCurves sample_curves(const TwoLevelParams& p, double t0, double t1, int n) {
    DiabaticAdiabaticCurves c;
    c.t.resize(n);
    c.d1.resize(n);
    c.d2.resize(n);
    c.e_minus.resize(n);
    c.e_plus.resize(n);
    c.phi.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = t0 + (t1 - t0) * i / (n - 1);
        double d = p.detuning(t), v = p.coupling(t);
        double a = std::hypot(d, v);
        double phi = (d == 0 && v == 0) ? (i ? c.phi[i - 1] : 0.0) : mixing_angle(d, v);
        c.t[i] = t;
        c.d1[i] = -a * std::cos(2 * phi);
        c.d2[i] = a * std::cos(2 * phi);
        c.e_minus[i] = -a;
        c.e_plus[i] = a;
        c.phi[i] = phi;
    }
    return c;
}

std::vector<double> adiabaticity(const std::vector<double>& t, const std::vector<double>& phi,
                                 const std::vector<double>& a) {
    if (t.size() != phi.size() || t.size() != a.size() || t.size() < 3)
        throw std::invalid_argument("adiabaticity: need equal-length series, >= 3 samples");
    std::vector<double> zeta(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        if (a[i] == 0.0) throw std::runtime_error("adiabaticity: true crossing (A = 0) on grid");
        size_t lo = i == 0 ? 0 : i - 1;
        size_t hi = i + 1 == t.size() ? i : i + 1;
        double dphi = (phi[hi] - phi[lo]) / (t[hi] - t[lo]);
        zeta[i] = std::abs(dphi / (2.0 * a[i]));
    }
    return zeta;
}

LzResult lz_probability(double A_pump, double A_stokes, double delta1, double alpha0, double tau_p) {
    if (alpha0 <= 0) throw std::invalid_argument("lz_probability: alpha0 must be positive");
    double g = 2.0 * A_pump * A_stokes / std::abs(delta1);
    double C = std::sqrt(8.0) * A_pump * A_stokes / (std::abs(delta1) * alpha0 * tau_p);
    LzResult r;
    r.probability = std::exp(-2.0 * M_PI * g * g / alpha0);
    r.C = C;
    r.valid = 2.0 * C * C <= 0.05;
    return r;
}

double lambert_w(int branch, double x) {
    const double inv_e = -1.0 / M_E;
    if (branch != 0 && branch != -1) throw std::invalid_argument("lambert_w: branch must be 0 or -1");
    if (x < inv_e - 1e-15) throw std::domain_error("lambert_w: x < -1/e has no real value");
    if (branch == -1 && x >= 0) throw std::domain_error("lambert_w: branch -1 needs x in [-1/e, 0)");
    if (x == 0.0) return branch == 0 ? 0.0 : -std::numeric_limits<double>::infinity();

    double w;
    double p2 = 2.0 * (M_E * x + 1.0);
    if (branch == 0) {
        if (p2 < 0.5) {
            double p = std::sqrt(std::max(p2, 0.0));
            w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;  // branch-point series
        } else if (x < 1.0) {
            w = x * (1.0 - x + 1.5 * x * x) / (1.0 + x * (0.5 + x));  // near 0
            if (!(std::isfinite(w))) w = 0.0;
        } else {
            double l1 = std::log(x), l2 = std::log(l1);
            w = l1 - l2 + l2 / l1;
        }
    } else {
        if (p2 < 0.5) {
            double p = std::sqrt(std::max(p2, 0.0));
            w = -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
        } else {
            double l1 = std::log(-x), l2 = std::log(-l1);
            w = l1 - l2 + l2 / l1;
        }
    }
    for (int i = 0; i < 60; ++i) {  // Halley
        double ew = std::exp(w);
        double f = w * ew - x;
        double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        if (denom == 0.0) break;
        double w_next = w - f / denom;
        if (!std::isfinite(w_next)) break;
        if (std::abs(w_next - w) <= 1e-16 * (1.0 + std::abs(w_next))) {
            w = w_next;
            break;
        }
        w = w_next;
    }
    return w;
}

Complex canonical_a(double C, double z_alpha, Complex z) {
    // A(z) = i sqrt(C^2 e^{2 z^2} - (z + i z_alpha)^2), alpha0*tau^2 scaled out
    Complex zz = z + Complex(0, z_alpha);
    Complex x = C * C * std::exp(2.0 * z * z) - zz * zz;
    return Complex(0, 1) * std::sqrt(x);
}

TurningPoint turning_point(double C, double z_alpha) {
    if (C <= 0) throw std::invalid_argument("turning_point: C must be positive");
    TurningPoint tp;
    tp.branch = 0;
    tp.branch_degenerate = 2.0 * C * C > 1.0 / M_E;
    double w = tp.branch_degenerate ? -1.0 : lambert_w(0, -2.0 * C * C);
    Complex z = std::sqrt(Complex(-w / 2.0, 0));  // real seed for z_alpha = 0
    z -= Complex(0, 0.5 * z_alpha);
    // Newton on f(z) = C^2 e^{2z^2} - (z + i z_alpha)^2
    for (int i = 0; i < 80; ++i) {
        Complex zz = z + Complex(0, z_alpha);
        Complex f = C * C * std::exp(2.0 * z * z) - zz * zz;
        Complex df = 4.0 * z * C * C * std::exp(2.0 * z * z) - 2.0 * zz;
        if (std::abs(df) == 0) break;
        Complex step = f / df;
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    tp.z0 = z;
    return tp;
}

double dykhne_probability(const std::function<Complex(Complex)>& a_eval, Complex z0, int n_quad) {
    if (n_quad < 8) throw std::invalid_argument("dykhne_probability: too few quadrature nodes");
    // Horizontal path eta + i Im z0, eta in [0, Re z0]; follow the sqrt branch by
    // continuity from eta = 0. Composite Simpson on sequential nodes.
    double re_end = z0.real();
    double h = re_end / n_quad;
    Complex prev = a_eval(Complex(0.0, z0.imag()));
    Complex integral = 0;
    Complex a_prev = prev;
    std::vector<Complex> samples(n_quad + 1);
    samples[0] = prev;
    for (int i = 1; i <= n_quad; ++i) {
        Complex z(h * i, z0.imag());
        Complex a = a_eval(z);
        if (std::abs(a + a_prev) < std::abs(a - a_prev)) a = -a;  // branch continuity
        samples[i] = a;
        a_prev = a;
    }
    for (int i = 0; i < n_quad; ++i) integral += 0.5 * (samples[i] + samples[i + 1]) * h;
    double im = std::abs((2.0 * integral).imag());
    double p = std::exp(-2.0 * im);
    if (!std::isfinite(p)) throw std::runtime_error("dykhne_probability: quadrature non-convergence");
    return p;
}

DykhneResult dykhne_from_pair(const TwoLevelParams& p, double t_cross, double tau_scale,
                              double seed_im) {
    if (!p.detuning_c || !p.coupling_c)
        throw std::invalid_argument("dykhne_from_pair: complex evaluators required");
    auto a_scaled = [&](Complex z) -> Complex {
        Complex t = t_cross + Complex(0, tau_scale) * z;
        Complex d = p.detuning_c(t), v = p.coupling_c(t);
        Complex x = d * d + v * v;
        // A_scaled = i tau sqrt(d^2 + v^2); branch handled by caller continuity
        return Complex(0, tau_scale) * std::sqrt(x);
    };
    // Newton for the turning point of X(z) = d^2 + v^2 in scaled coordinates.
    auto x_eval = [&](Complex z) -> Complex {
        Complex t = t_cross + Complex(0, tau_scale) * z;
        Complex d = p.detuning_c(t), v = p.coupling_c(t);
        return d * d + v * v;
    };
    double v0 = std::abs(p.coupling(t_cross));
    double slope = std::abs(central_diff(p.detuning, t_cross, 1e-3 * tau_scale));
    double c_est = slope > 0 ? v0 / (slope * tau_scale) : 0.3;
    double seed_re = 0.5;
    if (2.0 * c_est * c_est < 1.0 / M_E && c_est > 0)
        seed_re = std::sqrt(-lambert_w(0, -2.0 * c_est * c_est) / 2.0);
    Complex z = Complex(seed_re, seed_im * 0.0);
    const double fd = 1e-7;
    for (int i = 0; i < 100; ++i) {
        Complex f = x_eval(z);
        Complex df = (x_eval(z + fd) - x_eval(z - fd)) / (2.0 * fd);
        if (std::abs(df) == 0) break;
        Complex step = f / df;
        if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
        z -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) break;
    }
    DykhneResult r;
    r.z0 = z;
    r.t0 = t_cross + Complex(0, tau_scale) * z;
    r.probability = dykhne_probability(a_scaled, z, 600);
    return r;
}

Mat2 TransferMatrix::matrix() const {
    Mat2 n;
    Complex ph = std::exp(Complex(0, -stokes_phase));
    n << R * ph, -T, T, R * std::conj(ph);
    return n;
}

namespace {

Mat2 expm_step(double d, double v, double dt) {
    // exp(-i dt H), H = [[-d, v], [v, d]]
    double a = std::hypot(d, v);
    Mat2 u = Mat2::Identity() * std::cos(a * dt);
    if (a > 0) {
        Mat2 h;
        h << -d, v, v, d;
        u -= Complex(0, 1) * std::sin(a * dt) / a * h;
    }
    return u;
}

// Adiabatic eigenvectors, continuous convention: w- lower, w+ upper;
// columns [w-, w+] with phases fixed by phi in [0, pi/2] and sign of v.
Mat2 adiabatic_frame(double d, double v) {
    double phi = (d == 0 && v == 0) ? 0.0 : mixing_angle(d, v);
    double s = std::sin(phi), c = std::cos(phi);
    double sgn = v < 0 ? -1.0 : 1.0;
    Mat2 w;
    // H = [[-d, v],[v, d]]: w- = (c, -sgn*s), w+ = (sgn*s, c) at v>=0 checks out:
    //   d>0, v->0+: phi->0: w- = (1,0) energy -d  (lower)   ok
    //   d<0, v->0+: phi->pi/2: w- = (0,-sgn), w+ = (sgn,0)  lower is |2>, ok
    w << c, sgn * s, -sgn * s, c;
    return w;
}

}  // namespace

Mat2 propagate_pair(const TwoLevelParams& p, double ta, double tb, double dt) {
    if (tb <= ta || dt <= 0) throw std::invalid_argument("propagate_pair: bad interval");
    int n = std::max(1, static_cast<int>(std::ceil((tb - ta) / dt)));
    double h = (tb - ta) / n;
    Mat2 u = Mat2::Identity();
    for (int i = 0; i < n; ++i) {
        double tm = ta + (i + 0.5) * h;
        u = expm_step(p.detuning(tm), p.coupling(tm), h) * u;
    }
    return u;
}

double propagated_transition_probability(const TwoLevelParams& p, double ta, double tb, double dt) {
    Mat2 u = propagate_pair(p, ta, tb, dt);
    Mat2 wa = adiabatic_frame(p.detuning(ta), p.coupling(ta));
    Mat2 wb = adiabatic_frame(p.detuning(tb), p.coupling(tb));
    Eigen::Vector2cd psi = u * wa.col(0);
    return std::norm(wb.col(1).dot(psi));
}

Mat2 adiabatic_segment(const TwoLevelParams& p, double ta, double tb, int n_quad) {
    double phase = 0;  // int A dt by composite Simpson
    int n = n_quad + (n_quad % 2);
    double h = (tb - ta) / n;
    for (int i = 0; i <= n; ++i) {
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        phase += w * p.adiabatic_energy(ta + i * h);
    }
    phase *= h / 3.0;
    Mat2 u = Mat2::Zero();
    u(0, 0) = std::exp(Complex(0, phase));   // e^{-i int E-} with E- = -A
    u(1, 1) = std::exp(Complex(0, -phase));  // e^{-i int E+}
    return u;
}

TransferMatrix extract_transfer_matrix(const TwoLevelParams& p, double t_minus, double t_plus,
                                       double t_cross, double dt) {
    Mat2 u_prop = propagate_pair(p, t_minus, t_plus, dt);
    Mat2 wm = adiabatic_frame(p.detuning(t_minus), p.coupling(t_minus));
    Mat2 wp = adiabatic_frame(p.detuning(t_plus), p.coupling(t_plus));
    Mat2 u_ad = wp.adjoint() * u_prop * wm;
    Mat2 um = adiabatic_segment(p, t_minus, t_cross);
    Mat2 up = adiabatic_segment(p, t_cross, t_plus);
    Mat2 n = up.adjoint() * u_ad * um.adjoint();
    TransferMatrix tm;
    tm.R = std::abs(n(0, 0));
    tm.T = std::abs(n(1, 0));
    tm.stokes_phase = std::arg(n(1, 1));
    return tm;
}

Mat2 aia_compose(const Mat2& u_minus, const TransferMatrix& n, const Mat2& u_plus) {
    auto check_unitary = [](const Mat2& u, const char* who) {
        if ((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-8)
            throw std::invalid_argument(std::string("aia_compose: non-unitary input ") + who);
    };
    check_unitary(u_minus, "U-");
    check_unitary(u_plus, "U+");
    Mat2 nm = n.matrix();
    check_unitary(nm, "N");
    return u_plus * nm * u_minus;
}

}  // namespace wst
