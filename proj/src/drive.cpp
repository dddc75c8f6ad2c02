#include "wst/drive.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "wst/crossings.hpp"
#include "wst/numerics.hpp"

namespace wst {

double GaussianPulse::operator()(double t) const {
    double u = (t - center) / width;
    return amplitude * std::exp(-0.5 * u * u);
}

Complex GaussianPulse::operator()(Complex t) const {
    Complex u = (t - center) / width;
    return amplitude * std::exp(-0.5 * u * u);
}

double GaussianPulse::derivative(double t) const {
    return -(t - center) / (width * width) * (*this)(t);
}

double SumOfGaussians::operator()(double t) const {
    double v = 0;
    for (const auto& p : terms) v += p(t);
    return v;
}

Complex SumOfGaussians::operator()(Complex t) const {
    Complex v = 0;
    for (const auto& p : terms) v += p(t);
    return v;
}

double SumOfGaussians::derivative(double t) const {
    double v = 0;
    for (const auto& p : terms) v += p.derivative(t);
    return v;
}

double SumOfGaussians::peak_amplitude() const {
    double a = 0;
    for (const auto& p : terms) a = std::max(a, std::abs(p.amplitude));
    return a;
}

double eval_coupling(const DriveSchedule& s, int mode, double t) {
    if (mode < 1 || mode > 3) throw std::invalid_argument("eval_coupling: mode must be 1..3");
    return s.g[mode - 1](t);
}

double eval_chirp(const DriveSchedule& s, int mode, double t) {
    if (mode < 1 || mode > 3) throw std::invalid_argument("eval_chirp: mode must be 1..3");
    return s.omega[mode - 1](t);
}

void ProtocolSpec::validate() const {
    auto near = [](double a, double b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(b)); };
    if (!near(det1.delta2, -det1.delta1) || !near(det1.delta3, -det1.delta1))
        throw std::invalid_argument("stage 1 must satisfy delta2 = delta3 = -delta1");
    if (!near(det2.delta3, -det2.delta2))
        throw std::invalid_argument("stage 2 must satisfy delta3 = -delta2");
    if (!(stage1.t_end > stage1.t_start) || !(stage2.t_end > stage2.t_start) ||
        stage2.t_start < stage1.t_end - 1e-9)
        throw std::invalid_argument("stage windows must be ordered and disjoint");
    for (int stage = 1; stage <= 2; ++stage) {
        const DriveSchedule& s = stage == 1 ? stage1 : stage2;
        for (int m = 0; m < 3; ++m) {
            double peak = s.g[m].peak_amplitude();
            if (peak == 0) continue;
            for (double t : {s.t_start, s.t_end})
                if (std::abs(s.g[m](t)) > 1e-3 * peak)
                    throw std::invalid_argument("coupling envelope does not decay at window edge");
        }
    }
}

double fstirap_convergence_offset(double A_s, double A_p2, double t_s, double tau_s, double tau_p2) {
    if (A_s <= 0 || A_p2 <= 0) throw std::invalid_argument("fstirap_convergence_offset: amplitudes must be positive");
    double a = t_s * tau_s / tau_p2;
    double b = 2.0 * tau_p2 * tau_p2 * std::log(std::abs(A_p2 / A_s));
    return std::sqrt(std::abs(a * a - b));
}

double crossing_alignment_offset(const GaussianPulse& stokes, const GaussianPulse& pump,
                                 double delta1, double alpha0) {
    if (alpha0 == 0) throw std::invalid_argument("crossing_alignment_offset: no crossing at alpha0 = 0");
    double ts2 = stokes.width * stokes.width, tp2 = pump.width * pump.width;
    double t_c = (pump.center * ts2 + stokes.center * tp2) / (ts2 + tp2);
    double gp = pump(t_c), gs = stokes(t_c);
    return t_c + 3.0 * (gp * gp - gs * gs) / (2.0 * delta1 * alpha0);
}

HalfTransitionDesign solve_half_transition_offset(const SumOfGaussians& stokes,
                                                  const SumOfGaussians& pump, double delta,
                                                  double alpha0, double tau) {
    if (alpha0 <= 0) throw std::invalid_argument("solve_half_transition_offset: alpha0 must be positive");
    // Bright-pair ingredients (see hamiltonian module): half-splitting carries the
    // chirp plus 3(g_p^2 - g_s^2)/(2 Delta); coupling is 2 sqrt(2) g_s g_p / Delta.
    auto stark = [&, delta](double t) {
        double gp = pump(t), gs = stokes(t);
        return 1.5 * (gp * gp - gs * gs) / delta;
    };
    auto coupling = [&, delta](double t) { return 2.0 * std::sqrt(2.0) * stokes(t) * pump(t) / delta; };

    double c_s = stokes.terms.at(0).center, c_p = pump.terms.at(0).center;
    double t_joint = 0.5 * (c_s + c_p);  // equal widths in the presets

    auto p_model = [&](double tx) {
        double t_alpha = tx - stark(tx) / alpha0;  // aligns the zero crossing at tx
        TwoLevelParams pair;
        pair.detuning = [=, &stark](double t) { return -alpha0 * (t - t_alpha) + stark(t); };
        pair.coupling = coupling;
        pair.detuning_c = [=, &stokes, &pump](Complex t) -> Complex {
            Complex gp = pump(t), gs = stokes(t);
            return -alpha0 * (t - t_alpha) + 1.5 * (gp * gp - gs * gs) / delta;
        };
        pair.coupling_c = [=, &stokes, &pump](Complex t) -> Complex {
            return 2.0 * std::sqrt(2.0) * stokes(t) * pump(t) / delta;
        };
        return dykhne_from_pair(pair, tx, tau).probability;
    };

    double lo = c_s - 4.0 * tau, hi = t_joint;
    double p_lo = p_model(lo), p_hi = p_model(hi);
    if ((p_lo - 0.5) * (p_hi - 0.5) > 0)
        throw std::runtime_error("solve_half_transition_offset: target probability not bracketed");
    double tx = bisect([&](double t) { return p_model(t) - 0.5; }, lo, hi, 1e-10);

    HalfTransitionDesign d;
    d.t_cross = tx;
    d.t_alpha = tx - stark(tx) / alpha0;
    d.probability = p_model(tx);
    return d;
}

ProtocolConfig ProtocolConfig::named(const std::string& preset) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ProtocolConfig c;
    c.preset = preset;
    if (preset == "adiabatic") {
        c.params = {
            {"delta", 100.0},         {"V1", 1000.0},
            {"V2", 500.0},            {"V3", nan},
            {"stage1.A_s1", 0.505},   {"stage1.A_s2", 0.505},
            {"stage1.A_p1", 1.634},   {"stage1.A_p2", 0.505},
            {"stage1.tau_s", 1000.0}, {"stage1.t_s1", 1000.0},
            {"stage1.t_s2", 1000.0},  {"stage1.t_p1", 3000.0},
            {"stage1.alpha0", 0.0},   {"stage1.t_alpha", 0.0},
            {"stage2.A_s", 1.677},    {"stage2.A_p", 1.25},
            {"stage2.t_s", 1000.0},   {"stage2.t_p", 1000.0},
            {"stage2.tau_s", 1000.0}, {"stage2.alpha0", 0.0},
            {"stage2.t_alpha", nan},  {"D", 5000.0},
            {"V12", nan},             {"gap", 0.0},
            {"align_gap_phases", 1.0},
        };
    } else if (preset == "nonadiabatic" || preset == "non-adiabatic") {
        c.preset = "nonadiabatic";
        c.params = {
            {"delta", 100.0},          {"V1", 1000.0},
            {"V2", 500.0},             {"V3", nan},
            {"stage1.A_s", 0.55},      {"stage1.A_p1", 0.925},
            {"stage1.A_p2", 0.285},    {"stage1.tau_s", 1000.0},
            {"stage1.t_s", 0.0},       {"stage1.t_p1", -336.7},
            {"stage1.t_p2", nan},      {"stage1.alpha0", 2e-5},
            {"stage1.t_alpha", nan},   {"stage2.A_s", 0.983},
            {"stage2.A_p", 1.03},      {"stage2.t_s", 0.0},
            {"stage2.t_p", 2.0},       {"stage2.tau_s", 1000.0},
            {"stage2.alpha0", 2e-5},   {"stage2.t_alpha", nan},
            {"D", 5000.0},             {"V12", nan},
            {"gap", 0.0},              {"align_gap_phases", 1.0},
        };
    } else {
        throw std::invalid_argument("unknown preset: " + preset);
    }
    return c;
}

void ProtocolConfig::override_param(const std::string& key, double value) {
    if (!params.count(key)) throw std::invalid_argument("unknown parameter: " + key);
    params[key] = value;
}

namespace {

double get(const std::map<std::string, double>& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) throw std::invalid_argument("missing parameter: " + k);
    return it->second;
}

}  // namespace

ProtocolSpec build_protocol(const ProtocolConfig& config) {
    const auto& p = config.params;
    ProtocolSpec spec;
    spec.name = config.preset;
    spec.kind = config.preset == "adiabatic" ? ProtocolKind::adiabatic : ProtocolKind::nonadiabatic;

    double delta = get(p, "delta");
    spec.det1 = {-delta, delta, delta};
    spec.det2 = {-delta, -delta, delta};
    spec.V1 = get(p, "V1");
    spec.V2 = get(p, "V2");
    spec.V3 = std::isnan(get(p, "V3")) ? spec.V1 : get(p, "V3");
    spec.D = get(p, "D");
    spec.V12 = std::isnan(get(p, "V12")) ? spec.V1 - spec.V2 : get(p, "V12");
    spec.gap = get(p, "gap");
    spec.align_gap_phases = get(p, "align_gap_phases") != 0.0;

    double tau = get(p, "stage1.tau_s");
    double base = 5.0 * tau;
    double alpha0 = get(p, "stage1.alpha0");

    if (spec.kind == ProtocolKind::adiabatic) {
        double t_s1 = get(p, "stage1.t_s1"), t_s2 = get(p, "stage1.t_s2"), t_p1 = get(p, "stage1.t_p1");
        spec.stage1.t_start = 0;
        spec.stage1.t_end = 20.0 * tau;
        spec.stage1.g[0].terms = {
            {get(p, "stage1.A_s1"), base + 2.5 * tau + t_s1, tau},
            {get(p, "stage1.A_s2"), base - t_s2, tau},
            {get(p, "stage1.A_s2"), base + t_s2, tau},
        };
        spec.stage1.g[1].terms = {{get(p, "stage1.A_p1"), base + 2.5 * tau + t_p1, tau}};
        spec.stage1.g[2].terms = {{get(p, "stage1.A_p2"), base + t_s2, tau}};
        double t_alpha = base + get(p, "stage1.t_alpha");
        spec.stage1.omega[0] = {-alpha0, t_alpha, 0};
        spec.stage1.omega[1] = {alpha0, t_alpha, 0};
        spec.stage1.omega[2] = {alpha0, t_alpha, 0};
    } else {
        spec.stage1.t_start = 0;
        spec.stage1.t_end = 10.0 * tau;
        double t_s = get(p, "stage1.t_s");
        double t_p2 = get(p, "stage1.t_p2");
        if (std::isnan(t_p2))
            t_p2 = fstirap_convergence_offset(get(p, "stage1.A_s"), get(p, "stage1.A_p2"), t_s, tau, tau);
        spec.stage1.g[0].terms = {{get(p, "stage1.A_s"), base - t_s, tau}};
        spec.stage1.g[1].terms = {{get(p, "stage1.A_p1"), base + get(p, "stage1.t_p1"), tau}};
        spec.stage1.g[2].terms = {{get(p, "stage1.A_p2"), base + t_p2, tau}};
        double t_alpha = get(p, "stage1.t_alpha");
        if (std::isnan(t_alpha)) {
            auto design =
                solve_half_transition_offset(spec.stage1.g[0], spec.stage1.g[2], delta, alpha0, tau);
            t_alpha = design.t_alpha;  // absolute time
        } else {
            t_alpha = base + t_alpha;
        }
        spec.stage1.omega[0] = {-alpha0, t_alpha, 0};
        spec.stage1.omega[1] = {-alpha0, t_alpha, 0};
        spec.stage1.omega[2] = {-alpha0, t_alpha, 0};
    }

    // stage 2
    double tau2 = get(p, "stage2.tau_s");
    double alpha2 = get(p, "stage2.alpha0");
    spec.stage2.t_start = spec.stage1.t_end + spec.gap;
    spec.stage2.t_end = spec.stage2.t_start + 10.0 * tau2;
    double base2 = spec.stage2.t_start + 5.0 * tau2;
    GaussianPulse stokes2{get(p, "stage2.A_s"), base2 - get(p, "stage2.t_s"), tau2};
    GaussianPulse pump2{get(p, "stage2.A_p"), base2 + get(p, "stage2.t_p"), tau2};
    spec.stage2.g[0].terms = {};
    spec.stage2.g[1].terms = {stokes2};
    spec.stage2.g[2].terms = {pump2};
    double t_alpha2 = get(p, "stage2.t_alpha");
    if (std::isnan(t_alpha2)) {
        // pulse-overlap center plus the Stark correction, as in stage 1
        t_alpha2 = alpha2 != 0 ? crossing_alignment_offset(stokes2, pump2, spec.det2.delta2, alpha2)
                               : base2;
    } else {
        t_alpha2 = base2 + t_alpha2;
    }
    spec.stage2.omega[0] = {0, 0, -spec.D};  // parked; absorbed by the stage-2 frame
    if (spec.kind == ProtocolKind::adiabatic) {
        spec.stage2.omega[2] = {-alpha2, t_alpha2, 0};
        spec.stage2.omega[1] = {alpha2, t_alpha2, 0};  // residual of -w3' - (V12 + 2 delta2)
    } else {
        // Equal-sign reading; the printed opposite-sign pair cancels in the
        // bright-pair detuning and produces no crossing (see notes).
        spec.stage2.omega[2] = {-alpha2, t_alpha2, 0};
        spec.stage2.omega[1] = {-alpha2, t_alpha2, 0};
    }

    spec.validate();
    return spec;
}

ProtocolSpec preset(const std::string& name) { return build_protocol(ProtocolConfig::named(name)); }

std::string to_json_string(const ProtocolConfig& c) {
    nlohmann::json j;
    j["preset"] = c.preset;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : c.params) {
        if (std::isnan(v))
            params[k] = nullptr;
        else
            params[k] = v;
    }
    j["params"] = params;
    return j.dump(2);
}

ProtocolConfig config_from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ProtocolConfig c = ProtocolConfig::named(j.at("preset").get<std::string>());
    if (j.count("params"))
        for (auto& [k, v] : j.at("params").items())
            c.params[k] = v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    return c;
}

}  // namespace wst
