#include "plapwave/galerkin_dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "plapwave/errors.hpp"

namespace plapwave {

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

struct ExplicitForces {
    std::vector<double> plap;    // P_j = <-Delta_p u, w_j>
    std::vector<double> source;  // Fsrc_j = (f(u), w_j) + h(u(Gamma)) w_j(Gamma)
};

// Assembles the two nonlinear load vectors of the modal system.  All node
// loops are owner-computes (one fixed-order serial sum per output element),
// so Exec changes speed only, never bits.
ExplicitForces explicit_forces(const SpectralBasis& basis, const SourceSpec& spec,
                               double p, std::span<const double> c,
                               kernels::Exec exec) {
    const QuadratureRule& quad = basis.quad();
    const int n = basis.size();
    const int m = quad.size();

    std::vector<double> uvals(m), ugrad(m), density(m);
    kernels::synthesize(basis.value_table(), n, m, c, uvals, exec);
    kernels::synthesize(basis.deriv_table(), n, m, c, ugrad, exec);
    double u0 = 0.0, uL = 0.0;
    for (int j = 0; j < n; ++j) {
        u0 += c[j] * basis.trace0(j + 1);
        uL += c[j] * basis.traceL(j + 1);
    }

    ExplicitForces out;
    out.plap.resize(n);
    out.source.resize(n);

    kernels::pflux_density(ugrad, quad.weights, p, density, exec);
    kernels::assemble_load(basis.deriv_table(), n, m, density, out.plap, exec);
    const double flux0 = kernels::signed_power(u0, p - 1.0);
    const double fluxL = kernels::signed_power(uL, p - 1.0);
    for (int j = 0; j < n; ++j)
        out.plap[j] += flux0 * basis.trace0(j + 1) + fluxL * basis.traceL(j + 1);

    double scale = 1.0;
    if (spec.truncation.kind == TruncationKind::NormBall) {
        double acc = 0.0;
        for (int k = 0; k < m; ++k)
            acc += quad.weights[k] * kernels::abs_power(ugrad[k], p);
        acc += kernels::abs_power(u0, p) + kernels::abs_power(uL, p);
        scale = norm_ball_scale(spec.truncation.param, std::pow(acc, 1.0 / p));
    }

    const double* w = quad.weights.data();
    const double* uv = uvals.data();
    double* den = density.data();
    if (kernels::pointwise_parallel(exec, m)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int k = 0; k < m; ++k) den[k] = w[k] * effective_f(spec, scale, uv[k]);
    } else {
        for (int k = 0; k < m; ++k) den[k] = w[k] * effective_f(spec, scale, uv[k]);
    }
    kernels::assemble_load(basis.value_table(), n, m, density, out.source, exec);
    const double h0 = effective_h(spec, scale, u0);
    const double hL = effective_h(spec, scale, uL);
    for (int j = 0; j < n; ++j)
        out.source[j] += h0 * basis.trace0(j + 1) + hL * basis.traceL(j + 1);

    return out;
}

}  // namespace

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::Completed: return "completed";
        case Termination::BlowupDetected: return "blowup_detected";
        case Termination::DtUnderflow: return "dt_underflow";
    }
    return "completed";
}

std::vector<double> assemble_acceleration(const SpectralBasis& basis,
                                          const SourceSpec& spec, double p,
                                          const ModalState& state,
                                          kernels::Exec exec) {
    if (static_cast<int>(state.c.size()) != basis.size() ||
        static_cast<int>(state.v.size()) != basis.size())
        throw Error("assemble_acceleration: state size does not match basis");
    const ExplicitForces forces = explicit_forces(basis, spec, p, state.c, exec);
    std::vector<double> a(basis.size());
    for (int j = 0; j < basis.size(); ++j)
        a[j] = -forces.plap[j] - basis.lambda(j + 1) * state.v[j] + forces.source[j];
    if (!all_finite(a))
        throw NonFiniteValue("assemble_acceleration: non-finite component");
    return a;
}

ModalState step_imex(const SpectralBasis& basis, const SourceSpec& spec, double p,
                     const ModalState& state, double dt, kernels::Exec exec) {
    if (dt <= 0.0) throw Error("step_imex: need dt > 0");
    const ExplicitForces forces = explicit_forces(basis, spec, p, state.c, exec);
    const int n = basis.size();
    ModalState next;
    next.t = state.t + dt;
    next.v.resize(n);
    next.c.resize(n);
    for (int j = 0; j < n; ++j) {
        const double explicit_part = -forces.plap[j] + forces.source[j];
        next.v[j] = (state.v[j] + dt * explicit_part) / (1.0 + dt * basis.lambda(j + 1));
        next.c[j] = state.c[j] + dt * next.v[j];
    }
    return next;
}

ModalState step_rk4(const SpectralBasis& basis, const SourceSpec& spec, double p,
                    const ModalState& state, double dt, kernels::Exec exec) {
    if (dt <= 0.0) throw Error("step_rk4: need dt > 0");
    const int n = basis.size();
    auto accel = [&](const std::vector<double>& c, const std::vector<double>& v) {
        ModalState s;
        s.c = c;
        s.v = v;
        return assemble_acceleration(basis, spec, p, s, exec);
    };
    auto axpy = [n](const std::vector<double>& x, double a, const std::vector<double>& y) {
        std::vector<double> out(n);
        for (int j = 0; j < n; ++j) out[j] = x[j] + a * y[j];
        return out;
    };

    const std::vector<double>& k1c = state.v;
    const std::vector<double> k1v = accel(state.c, state.v);
    const std::vector<double> c2 = axpy(state.c, 0.5 * dt, k1c);
    const std::vector<double> v2 = axpy(state.v, 0.5 * dt, k1v);
    const std::vector<double>& k2c = v2;
    const std::vector<double> k2v = accel(c2, v2);
    const std::vector<double> c3 = axpy(state.c, 0.5 * dt, k2c);
    const std::vector<double> v3 = axpy(state.v, 0.5 * dt, k2v);
    const std::vector<double>& k3c = v3;
    const std::vector<double> k3v = accel(c3, v3);
    const std::vector<double> c4 = axpy(state.c, dt, k3c);
    const std::vector<double> v4 = axpy(state.v, dt, k3v);
    const std::vector<double>& k4c = v4;
    const std::vector<double> k4v = accel(c4, v4);

    ModalState next;
    next.t = state.t + dt;
    next.c.resize(n);
    next.v.resize(n);
    for (int j = 0; j < n; ++j) {
        next.c[j] = state.c[j] + dt / 6.0 * (k1c[j] + 2.0 * k2c[j] + 2.0 * k3c[j] + k4c[j]);
        next.v[j] = state.v[j] + dt / 6.0 * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
    }
    return next;
}

FieldSample sample_profile(const SpectralBasis& basis, const InitialProfile& profile) {
    const QuadratureRule& quad = basis.quad();
    FieldSample s;
    s.quad = &quad;
    s.values.assign(quad.size(), 0.0);
    s.derivs.assign(quad.size(), 0.0);
    switch (profile.kind) {
        case InitialProfile::Kind::Constant: {
            std::fill(s.values.begin(), s.values.end(), profile.amplitude);
            s.trace0 = s.traceL = profile.amplitude;
            break;
        }
        case InitialProfile::Kind::Eigenmode: {
            const int j = profile.mode;
            basis.pair(j);  // range check
            const double a = profile.amplitude;
            for (int k = 0; k < quad.size(); ++k) {
                s.values[k] = a * basis.values(j)[k];
                s.derivs[k] = a * basis.derivs(j)[k];
            }
            s.trace0 = a * basis.trace0(j);
            s.traceL = a * basis.traceL(j);
            break;
        }
        case InitialProfile::Kind::Mix: {
            s.trace0 = s.traceL = 0.0;
            for (size_t i = 0; i < profile.modes.size(); ++i) {
                const int j = profile.modes[i];
                basis.pair(j);
                const double a = profile.amplitudes[i];
                for (int k = 0; k < quad.size(); ++k) {
                    s.values[k] += a * basis.values(j)[k];
                    s.derivs[k] += a * basis.derivs(j)[k];
                }
                s.trace0 += a * basis.trace0(j);
                s.traceL += a * basis.traceL(j);
            }
            break;
        }
        case InitialProfile::Kind::Polynomial: {
            auto horner = [&](double x) {
                double acc = 0.0;
                for (auto it = profile.poly_coeffs.rbegin();
                     it != profile.poly_coeffs.rend(); ++it)
                    acc = acc * x + *it;
                return acc;
            };
            auto horner_deriv = [&](double x) {
                double acc = 0.0;
                const int deg = static_cast<int>(profile.poly_coeffs.size()) - 1;
                for (int i = deg; i >= 1; --i)
                    acc = acc * x + i * profile.poly_coeffs[i];
                return acc;
            };
            for (int k = 0; k < quad.size(); ++k) {
                s.values[k] = horner(quad.nodes[k]);
                s.derivs[k] = horner_deriv(quad.nodes[k]);
            }
            s.trace0 = horner(0.0);
            s.traceL = horner(basis.domain().length);
            break;
        }
    }
    return s;
}

std::vector<double> project_initial(const SpectralBasis& basis,
                                    const InitialProfile& profile) {
    std::vector<double> c(basis.size(), 0.0);
    switch (profile.kind) {
        case InitialProfile::Kind::Eigenmode:
            basis.pair(profile.mode);
            c[profile.mode - 1] = profile.amplitude;
            return c;
        case InitialProfile::Kind::Mix:
            for (size_t i = 0; i < profile.modes.size(); ++i) {
                basis.pair(profile.modes[i]);
                c[profile.modes[i] - 1] += profile.amplitudes[i];
            }
            return c;
        default: {
            const FieldSample s = sample_profile(basis, profile);
            std::vector<double> weighted(s.values.size());
            for (size_t k = 0; k < s.values.size(); ++k)
                weighted[k] = basis.quad().weights[k] * s.values[k];
            kernels::assemble_load(basis.value_table(), basis.size(),
                                   basis.quad().size(), weighted, c,
                                   kernels::Exec::Serial);
            return c;
        }
    }
}

Trajectory simulate(const SimulationConfig& config, kernels::Exec exec) {
    const RegimeReport regime =
        classify_exponents(config.p, config.sources.q, config.sources.r);
    if (!regime.admissible_3d && !config.allow_inadmissible)
        throw ConfigError("simulate: source exponents outside the admissible window "
                          "(set allow_inadmissible to override)");

    Trajectory traj;
    traj.config = config;
    const QuadratureRule quad = composite_gauss_legendre(
        config.domain.length, config.quad_subintervals, config.quad_points);
    traj.basis = std::make_shared<SpectralBasis>(
        build_basis(config.domain, config.modes, quad));
    const SpectralBasis& basis = *traj.basis;
    const SourceSpec& spec = config.sources;
    const double p = config.p;

    // Total energy of the exact initial data, independent of the projection.
    {
        const FieldSample u0s = sample_profile(basis, config.initial_data.u0);
        const FieldSample u1s = sample_profile(basis, config.initial_data.u1);
        double cv = 0.0;
        for (int k = 0; k < quad.size(); ++k)
            cv += quad.weights[k] * u0s.values[k] * u1s.values[k];
        traj.initial_E_total_exact =
            energy_record_from_samples(u0s, u1s, spec, p, 0.0, 0.0, cv).E_total;
    }

    ModalState state;
    state.t = 0.0;
    state.c = project_initial(basis, config.initial_data.u0);
    state.v = project_initial(basis, config.initial_data.u1);
    if (!all_finite(state.c) || !all_finite(state.v))
        throw NonFiniteValue("simulate: non-finite initial projection");

    EnergyRecord rec0 = energy_record(basis, spec, p, state, 0.0, exec);
    const double E0_pos = rec0.E_pos;
    const double E0_total = rec0.E_total;

    std::optional<BlowupParameters> params;
    if (config.alpha && config.beta) {
        BlowupParameters bp;
        bp.alpha = *config.alpha;
        bp.beta = *config.beta;
        bp.m = std::min(spec.q, spec.r);
        params = bp;
    } else {
        try {
            BlowupParameters bp = select_blowup_parameters(p, spec.q, spec.r,
                                                           -E0_total, rec0.Nprime);
            if (config.alpha) bp.alpha = *config.alpha;
            if (config.beta) bp.beta = *config.beta;
            params = bp;
        } catch (const NotBlowupCandidate&) {
            params = std::nullopt;
        }
    }
    traj.blowup_params = params;

    attach_run_context(rec0, E0_pos, E0_total, 0.0, params);
    traj.states.push_back(state);
    traj.records.push_back(rec0);

    double dt = config.dt0;
    const double dt_min = config.dt0 * std::pow(2.0, -20);
    const double t_eps = 1e-12 * std::max(1.0, config.t_end);
    double damping_cum = 0.0, work_cum = 0.0;
    EnergyRecord prev = rec0;
    int consecutive_ok = 0;

    traj.termination = Termination::Completed;
    while (true) {
        if (config.t_end - state.t <= t_eps) {
            traj.termination = Termination::Completed;
            traj.termination_time = state.t;
            break;
        }
        const double dt_eff = std::min(dt, config.t_end - state.t);

        ModalState next;
        EnergyRecord rec;
        bool ok = true;
        try {
            next = config.scheme == Scheme::Imex
                       ? step_imex(basis, spec, p, state, dt_eff, exec)
                       : step_rk4(basis, spec, p, state, dt_eff, exec);
            rec = energy_record(basis, spec, p, next, 0.0, exec);
            const double d = next.t - state.t;
            const double step_res =
                rec.E_pos - prev.E_pos +
                0.5 * d * (rec.damping_power + prev.damping_power) -
                0.5 * d * (rec.work_power + prev.work_power);
            ok = all_finite(next.c) && all_finite(next.v) && std::isfinite(step_res);
            if (ok && config.residual_tol > 0.0)
                ok = std::abs(step_res) <=
                     config.residual_tol * std::max(1.0, prev.E_pos);
        } catch (const NonFiniteValue&) {
            ok = false;
        }

        if (!ok) {
            ++traj.steps_rejected;
            consecutive_ok = 0;
            dt *= 0.5;
            if (dt < dt_min) {
                traj.termination = Termination::DtUnderflow;
                traj.termination_time = state.t;
                break;
            }
            continue;
        }

        const double d = next.t - state.t;
        damping_cum += 0.5 * d * (prev.damping_power + rec.damping_power);
        work_cum += 0.5 * d * (prev.work_power + rec.work_power);
        rec.damping_cum = damping_cum;
        attach_run_context(rec, E0_pos, E0_total, work_cum, params);

        state = next;
        prev = rec;
        traj.states.push_back(state);
        traj.records.push_back(rec);
        ++traj.steps_accepted;

        ++consecutive_ok;
        if (consecutive_ok >= 50 && dt < config.dt0) {
            dt = std::min(2.0 * dt, config.dt0);
            consecutive_ok = 0;
        }

        // Blow-up = threshold crossing plus monotone growth over the
        // trailing samples (a bounded run can graze a low threshold once).
        if (rec.E_pos > config.blowup_threshold && traj.records.size() >= 10) {
            bool monotone = true;
            const size_t nrec = traj.records.size();
            for (size_t i = nrec - 10; i + 1 < nrec; ++i)
                if (!(traj.records[i + 1].E_pos >= traj.records[i].E_pos))
                    monotone = false;
            if (monotone) {
                traj.termination = Termination::BlowupDetected;
                traj.termination_time = state.t;
                break;
            }
        }
    }
    return traj;
}

double weak_residual(const Trajectory& traj, int j, int index) {
    const SpectralBasis& basis = *traj.basis;
    if (j < 1 || j > basis.size())
        throw IndexOutOfRange("weak_residual: mode index " + std::to_string(j));
    if (index < 0 || index >= static_cast<int>(traj.states.size()))
        throw IndexOutOfRange("weak_residual: sample index");
    const QuadratureRule& quad = basis.quad();
    const SourceSpec& spec = traj.config.sources;
    const double p = traj.config.p;

    FieldSample wj;
    wj.quad = &quad;
    wj.values.assign(basis.values(j).begin(), basis.values(j).end());
    wj.derivs.assign(basis.derivs(j).begin(), basis.derivs(j).end());
    wj.trace0 = basis.trace0(j);
    wj.traceL = basis.traceL(j);

    auto integrand = [&](const ModalState& s) {
        const FieldSample u = sample_coeffs(basis, s.c);
        const FieldSample v = sample_coeffs(basis, s.v);
        double scale = 1.0;
        if (spec.truncation.kind == TruncationKind::NormBall)
            scale = norm_ball_scale(spec.truncation.param, w1p_norm(u, p));
        double fw = 0.0;
        for (int k = 0; k < quad.size(); ++k)
            fw += quad.weights[k] * effective_f(spec, scale, u.values[k]) * wj.values[k];
        fw += effective_h(spec, scale, u.trace0) * wj.trace0 +
              effective_h(spec, scale, u.traceL) * wj.traceL;
        return plap_pairing(u, wj, p) + damping_pairing(v, wj) - fw;
    };

    double acc = 0.0;
    double prev_val = integrand(traj.states[0]);
    for (int i = 0; i < index; ++i) {
        const double cur_val = integrand(traj.states[i + 1]);
        acc += 0.5 * (traj.states[i + 1].t - traj.states[i].t) * (prev_val + cur_val);
        prev_val = cur_val;
    }
    return traj.states[index].v[j - 1] - traj.states[0].v[j - 1] + acc;
}

}  // namespace plapwave
