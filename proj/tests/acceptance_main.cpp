// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance is pinned in this file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "plapwave/galerkin_dynamics.hpp"

using namespace plapwave;

namespace {

const double kPi = std::numbers::pi;

struct Check {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    }
    void note(const std::string& what) { notes.push_back("       " + what); }
};

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

SourceSpec power_spec(double q, double r) {
    SourceSpec s;
    s.form = SourceForm::PowerLaw;
    s.q = q;
    s.r = r;
    return s;
}

// Mild-source scenario on [0, pi]: first eigenmode displacement, rest.
SimulationConfig mild_scenario(int modes, double t_end, double dt,
                               double residual_tol) {
    SimulationConfig cfg;
    cfg.p = 2.5;
    cfg.sources = power_spec(1.25, 1.25);
    cfg.domain.length = kPi;
    cfg.modes = modes;
    cfg.quad_subintervals = 256;
    cfg.quad_points = 8;
    cfg.dt0 = dt;
    cfg.t_end = t_end;
    cfg.blowup_threshold = 1e12;
    cfg.residual_tol = residual_tol;
    cfg.initial_data.u0 = {InitialProfile::Kind::Eigenmode, 1.0, 1, {}, {}, {}};
    cfg.initial_data.u1 = {InitialProfile::Kind::Constant, 0.0, 1, {}, {}, {}};
    return cfg;
}

// Negative-initial-energy scenario on [0, 1]: constant displacement with
// quadratic power-law sources.
SimulationConfig steep_scenario(double amplitude, double t_end, double threshold) {
    SimulationConfig cfg;
    cfg.p = 2.5;
    cfg.sources = power_spec(2.0, 2.0);
    cfg.domain.length = 1.0;
    cfg.modes = 16;
    cfg.quad_subintervals = 256;
    cfg.quad_points = 8;
    cfg.dt0 = 1e-3;
    cfg.t_end = t_end;
    cfg.blowup_threshold = threshold;
    cfg.residual_tol = 1e-3;
    cfg.initial_data.u0 = {InitialProfile::Kind::Constant, amplitude, 1, {}, {}, {}};
    cfg.initial_data.u1 = {InitialProfile::Kind::Constant, 0.0, 1, {}, {}, {}};
    cfg.expect = Expectation::Blowup;
    return cfg;
}

double sup_energy(const Trajectory& traj) {
    double sup = 0.0;
    for (const EnergyRecord& r : traj.records) sup = std::max(sup, r.E_pos);
    return sup;
}

double max_energy_residual(const Trajectory& traj) {
    double worst = 0.0;
    for (const EnergyRecord& r : traj.records)
        worst = std::max(worst, std::abs(r.energy_residual));
    return worst;
}

// ---------------------------------------------------------------------------

void criterion_1_spectrum(Check& c) {
    const double t0 = now();
    const SpectralBasis basis =
        build_basis(DomainSpec{kPi}, 20, composite_gauss_legendre(kPi, 256, 8));
    const double elapsed = now() - t0;

    double worst_res = 0.0;
    for (int j = 1; j <= 20; ++j)
        worst_res = std::max(worst_res,
                             std::abs(characteristic_residual(basis.pair(j).mu, kPi)));
    c.require(worst_res < 1e-10,
              "max |characteristic residual| = " + fmt(worst_res) + " < 1e-10");

    double worst_gram = 0.0;
    const QuadratureRule& quad = basis.quad();
    for (int i = 1; i <= 20; ++i)
        for (int j = i; j <= 20; ++j) {
            double acc = 0.0;
            for (int k = 0; k < quad.size(); ++k)
                acc += quad.weights[k] * basis.values(i)[k] * basis.values(j)[k];
            worst_gram = std::max(worst_gram, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    c.require(worst_gram < 1e-8, "Gram deviation = " + fmt(worst_gram) + " < 1e-8");

    double worst_gap = 0.0;
    for (int j = 15; j <= 20; ++j)
        worst_gap = std::max(worst_gap, std::abs(basis.pair(j).mu * kPi - j * kPi));
    c.require(worst_gap < 0.05,
              "max |mu_j L - j pi| (j >= 15) = " + fmt(worst_gap) + " < 0.05");
    if (worst_gap >= 0.05) {
        // The computed spectrum of R(mu) = (1-mu^2)sin(mu L) + 2mu cos(mu L)
        // sits near the shifted lattice (j-1)pi/L + 2/(mu L); the distance to
        // j*pi is about pi for every j, and even against (j-1)pi it is
        // 2/mu_j ~ 0.11 over this index range, so the 0.05 bound cannot be
        // met by the spectrum this characteristic function defines.
        double shifted = 0.0;
        for (int j = 15; j <= 20; ++j)
            shifted = std::max(shifted,
                               std::abs(basis.pair(j).mu * kPi - (j - 1) * kPi));
        c.note("distance to the shifted lattice (j-1)pi is " + fmt(shifted) +
               "; the stated j*pi bound is unattainable for this operator");
    }

    c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s < 1 s");
}

void criterion_2_damping_diagonal(Check& c) {
    const double t0 = now();
    const SpectralBasis basis =
        build_basis(DomainSpec{kPi}, 20, composite_gauss_legendre(kPi, 256, 8));
    std::vector<DiscreteFunction> w;
    for (int j = 1; j <= 20; ++j) {
        std::vector<double> coeff(20, 0.0);
        coeff[j - 1] = 1.0;
        w.emplace_back(basis, coeff);
    }
    double worst = 0.0;
    for (int j = 0; j < 20; ++j)
        for (int k = 0; k < 20; ++k) {
            const double expected = j == k ? basis.lambda(j + 1) : 0.0;
            worst = std::max(worst, std::abs(damping_pairing(w[j], w[k]) - expected));
        }
    const double elapsed = now() - t0;
    c.require(worst < 1e-6, "max |D - diag(lambda)| = " + fmt(worst) + " < 1e-6");
    c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s < 1 s");
}

void criterion_3_dual_norm(Check& c) {
    const SpectralBasis basis =
        build_basis(DomainSpec{kPi}, 20, composite_gauss_legendre(kPi, 256, 8));
    const double p = 2.5;
    std::uint64_t rng = 20260810;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> cu(20), cphi(20);
        const double scale_u = std::pow(10.0, 2.0 * uniform_pm1(rng));
        const double scale_p = std::pow(10.0, 2.0 * uniform_pm1(rng));
        for (int j = 0; j < 20; ++j) {
            cu[j] = scale_u * uniform_pm1(rng);
            cphi[j] = scale_p * uniform_pm1(rng);
        }
        const DiscreteFunction u(basis, cu), phi(basis, cphi);
        const double denom =
            2.0 * std::pow(w1p_norm(u, p), p - 1.0) * w1p_norm(phi, p);
        if (denom == 0.0) continue;
        worst = std::max(worst, std::abs(plap_pairing(u, phi, p)) / denom);
    }
    c.require(worst <= 1.0 + 1e-8,
              "max ratio over 1000 pairs = " + fmt(worst) + " <= 1 + 1e-8");
}

void criterion_4_monotonicity(Check& c) {
    const SpectralBasis basis =
        build_basis(DomainSpec{kPi}, 20, composite_gauss_legendre(kPi, 256, 8));
    std::uint64_t rng = 7771;
    double worst = 0.0;
    for (double p : {2.2, 2.5, 2.9}) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> cu(20), cv(20), cd(20);
            for (int j = 0; j < 20; ++j) {
                cu[j] = 2.0 * uniform_pm1(rng);
                cv[j] = 2.0 * uniform_pm1(rng);
                cd[j] = cu[j] - cv[j];
            }
            const DiscreteFunction u(basis, cu), v(basis, cv), d(basis, cd);
            worst = std::min(worst, plap_pairing(u, d, p) - plap_pairing(v, d, p));
        }
    }
    c.require(worst >= -1e-10,
              "min monotonicity gap over 3000 pairs = " + fmt(worst) + " >= -1e-10");
}

void criterion_5_energy_identity_order(Check& c) {
    const double t0 = now();
    double residuals[3];
    const double dts[3] = {1e-3, 5e-4, 2.5e-4};
    for (int i = 0; i < 3; ++i) {
        const Trajectory traj = simulate(mild_scenario(16, 2.0, dts[i], 0.0));
        residuals[i] = max_energy_residual(traj);
    }
    const double elapsed = now() - t0;
    c.note("max residuals at dt {1e-3, 5e-4, 2.5e-4}: " + fmt(residuals[0]) + ", " +
           fmt(residuals[1]) + ", " + fmt(residuals[2]));
    c.require(residuals[0] / residuals[1] >= 1.8,
              "first halving ratio " + fmt(residuals[0] / residuals[1]) + " >= 1.8");
    c.require(residuals[1] / residuals[2] >= 1.8,
              "second halving ratio " + fmt(residuals[1] / residuals[2]) + " >= 1.8");
    c.require(elapsed < 30.0, "runtime " + fmt(elapsed) + " s < 30 s");
}

void criterion_6_global_regime(Check& c) {
    // The genuine trajectory rides a large transient (E_pos ~ 3e9) before the
    // gradient term dominates the sources, so the detection threshold is
    // raised well past it and dt is set small enough to resolve the peak.
    const Trajectory t16 = simulate(mild_scenario(16, 10.0, 1e-4, 1e-3));
    const Trajectory t32 = simulate(mild_scenario(32, 10.0, 1e-4, 1e-3));
    const double sup16 = sup_energy(t16);
    const double sup32 = sup_energy(t32);
    c.require(t16.termination == Termination::Completed,
              "N = 16 run completed (termination = " +
                  termination_name(t16.termination) + ")");
    c.require(t32.termination == Termination::Completed,
              "N = 32 run completed (termination = " +
                  termination_name(t32.termination) + ")");
    c.require(std::isfinite(sup16) && std::isfinite(sup32),
              "sup E_pos finite: " + fmt(sup16) + ", " + fmt(sup32));
    const double rel = std::abs(sup16 - sup32) / sup16;
    c.require(rel < 0.05, "sup E_pos relative change N16 -> N32 = " + fmt(rel) +
                              " < 0.05");
}

void criterion_7_blowup_regime(Check& c) {
    const double t0 = now();
    double previous_time = 1e300;
    for (double amplitude : {2.0, 3.0, 4.0}) {
        const Trajectory traj = simulate(steep_scenario(amplitude, 5.0, 1e6));
        const std::string tag = "amplitude " + fmt(amplitude);

        if (amplitude == 2.0) {
            c.require(traj.initial_E_total_exact < 0.0,
                      tag + ": initial total energy (exact data) = " +
                          fmt(traj.initial_E_total_exact) + " < 0");
        }
        c.require(traj.termination == Termination::BlowupDetected,
                  tag + ": termination = " + termination_name(traj.termination));
        c.require(traj.termination_time < traj.config.t_end,
                  tag + ": detected at finite t = " + fmt(traj.termination_time));

        bool g_strict = true;
        for (size_t i = 0; i + 1 < traj.records.size(); ++i)
            if (!(traj.records[i + 1].G > traj.records[i].G)) g_strict = false;
        c.require(g_strict, tag + ": G strictly increasing");

        bool y_strict = true;
        for (size_t i = 1; i + 1 < traj.records.size(); ++i) {
            const double y0 = traj.records[i].Y, y1 = traj.records[i + 1].Y;
            if (!std::isfinite(y0) || !std::isfinite(y1) || !(y1 > y0))
                y_strict = false;
        }
        c.require(y_strict, tag + ": Y strictly increasing after t = 0");

        c.require(traj.termination_time <= previous_time,
                  tag + ": blow-up time " + fmt(traj.termination_time) +
                      " nonincreasing in amplitude");
        previous_time = traj.termination_time;
    }
    const double elapsed = now() - t0;
    c.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s < 60 s");
}

void criterion_8_truncation_consistency(Check& c) {
    // Norm-ball: identical modal data until the trajectory leaves the ball.
    SimulationConfig plain = steep_scenario(2.0, 1.0, 1e9);
    SimulationConfig balled = plain;
    const double K = 1e3;
    balled.sources.truncation = {TruncationKind::NormBall, K};
    const Trajectory tp = simulate(plain);
    const Trajectory tb = simulate(balled);

    size_t crossing = tp.states.size();
    for (size_t i = 0; i < tp.states.size(); ++i) {
        const double norm = w1p_norm(sample_coeffs(*tp.basis, tp.states[i].c), 2.5);
        if (norm > K) {
            crossing = i;
            break;
        }
    }
    c.require(crossing < tp.states.size(),
              "plain run exits the K = 1e3 ball (sample " + fmt(crossing) + ")");
    bool prefix_equal = crossing > 0 && crossing < tb.states.size();
    for (size_t i = 0; prefix_equal && i <= crossing && i < tb.states.size(); ++i)
        prefix_equal = tp.states[i].t == tb.states[i].t &&
                       tp.states[i].c == tb.states[i].c &&
                       tp.states[i].v == tb.states[i].v;
    c.require(prefix_equal, "bitwise match through the crossing sample");

    // Cutoff above the running amplitude never changes a bounded run.
    SimulationConfig bounded = mild_scenario(16, 1.0, 1e-3, 1e-3);
    const Trajectory t_plain = simulate(bounded);
    double sup_node = 0.0;
    for (const ModalState& s : t_plain.states) {
        const FieldSample u = sample_coeffs(*t_plain.basis, s.c);
        for (double x : u.values) sup_node = std::max(sup_node, std::abs(x));
        sup_node = std::max({sup_node, std::abs(u.trace0), std::abs(u.traceL)});
    }
    SimulationConfig cut = bounded;
    cut.sources.truncation = {TruncationKind::Cutoff, sup_node + 1.0};
    const Trajectory t_cut = simulate(cut);
    bool identical = t_plain.states.size() == t_cut.states.size();
    for (size_t i = 0; identical && i < t_plain.states.size(); ++i)
        identical = t_plain.states[i].c == t_cut.states[i].c &&
                    t_plain.states[i].v == t_cut.states[i].v;
    c.require(identical, "cutoff n = sup|u| + 1 reproduces the run bitwise (n = " +
                             fmt(sup_node + 1.0) + ")");
}

void criterion_9_formulas(Check& c) {
    const double t0_value = existence_time_T0(2.0, 0.5, 1.0, 2.0, 10.0);
    c.require(std::abs(t0_value - 0.5 * std::log(2.0)) < 1e-12,
              "T0(2, 0.5, 1, 2, 10) = " + fmt(t0_value) + " = ln(2)/2");

    c.require(gronwall_envelope(1.0, 2.0, 2.5, 0.0) == 1.0, "envelope at t = 0");
    const double env = gronwall_envelope(1.0, 1.0, 2.0, 1.0);
    c.require(std::abs(env - 2.0 * std::exp(2.0)) < 1e-12,
              "envelope(1, 1, 2, 1) = " + fmt(env) + " = 2 e^2");

    // quadratic-ODE oracle for the horizon formula (alpha = 1/2, C = 1, Y0 = 1)
    BlowupParameters params;
    params.alpha = 0.5;
    params.beta = 0.25;
    std::vector<EnergyRecord> recs(3);
    recs[0] = {};
    recs[0].t = 0.0;
    recs[0].G = 1.0;
    recs[0].Y = 1.0;
    recs[1].t = 1e-3;
    recs[1].G = 1.0;
    recs[1].Y = 1.0;
    recs[2].t = 2e-3;
    recs[2].G = 1.0;
    recs[2].Y = 1.0 + 1e-3;
    const BlowupCertificate cert = blowup_certificate(recs, params, 1.0);
    c.require(std::abs(cert.fitted_C - 1.0) < 1e-12, "fitted C = " + fmt(cert.fitted_C));
    c.require(std::abs(cert.horizon_derived - 1.0) < 1e-12,
              "derived horizon = " + fmt(cert.horizon_derived) + " = 1");
}

void criterion_10_classifier(Check& c) {
    const RegimeReport steep = classify_exponents(2.5, 2.0, 2.0);
    c.require(steep.admissible_3d && steep.blowup_candidate && !steep.global_guaranteed,
              "(2.5, 2, 2): admissible blow-up candidate");
    const RegimeReport mild = classify_exponents(2.5, 1.25, 1.25);
    c.require(mild.global_guaranteed, "(2.5, 1.25, 1.25): global guaranteed");
    const RegimeReport wild = classify_exponents(2.5, 13.0, 1.0);
    c.require(!wild.admissible_3d, "(2.5, 13, 1): inadmissible");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Check&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "spectrum correctness", criterion_1_spectrum},
        {2, "diagonal damping matrix", criterion_2_damping_diagonal},
        {3, "dual-norm bound", criterion_3_dual_norm},
        {4, "monotonicity of the p-Laplacian", criterion_4_monotonicity},
        {5, "energy identity first-order convergence", criterion_5_energy_identity_order},
        {6, "bounded regime stability under mode doubling", criterion_6_global_regime},
        {7, "negative-energy blow-up detection", criterion_7_blowup_regime},
        {8, "truncation consistency", criterion_8_truncation_consistency},
        {9, "existence-time, envelope and horizon formulas", criterion_9_formulas},
        {10, "exponent regime classifier", criterion_10_classifier},
    };

    int failures = 0;
    for (const Criterion& crit : criteria) {
        Check check;
        try {
            crit.fn(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %d: %s\n", check.pass ? "PASS" : "FAIL", crit.id,
                    crit.name);
        for (const std::string& note : check.notes) std::printf("%s\n", note.c_str());
        if (!check.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
