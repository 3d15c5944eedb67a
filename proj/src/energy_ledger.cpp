#include "plapwave/energy_ledger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plapwave/errors.hpp"

namespace plapwave {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

EnergyRecord energy_record_from_samples(const FieldSample& u, const FieldSample& v,
                                        const SourceSpec& spec, double p, double t,
                                        double damping_cum, double cv_dot) {
    const QuadratureRule& quad = *u.quad;
    EnergyRecord rec;
    rec.t = t;
    rec.damping_cum = damping_cum;

    double kin2 = 0.0, w1p_sum = 0.0, n2 = 0.0, f_int = 0.0, s_int = 0.0;
    for (int k = 0; k < quad.size(); ++k) {
        const double w = quad.weights[k];
        kin2 += w * v.values[k] * v.values[k];
        w1p_sum += w * kernels::abs_power(u.derivs[k], p);
        n2 += w * u.values[k] * u.values[k];
        f_int += w * primitive_F(spec, u.values[k]);
        s_int += w * kernels::abs_power(u.values[k], spec.q + 1.0);
    }
    w1p_sum += kernels::abs_power(u.trace0, p) + kernels::abs_power(u.traceL, p);

    rec.kinetic = 0.5 * kin2;
    rec.potential = w1p_sum / p;
    rec.E_pos = rec.kinetic + rec.potential;
    rec.F_int = f_int;
    rec.H_int = primitive_H(spec, u.trace0) + primitive_H(spec, u.traceL);
    rec.E_total = rec.E_pos - rec.F_int - rec.H_int;
    rec.N = n2;
    rec.Nprime = 2.0 * cv_dot;
    rec.S = s_int + kernels::abs_power(u.trace0, spec.r + 1.0) +
            kernels::abs_power(u.traceL, spec.r + 1.0);

    // Rates feeding the trapezoid accumulators.  The norm-ball scale is
    // recomputed from the current state exactly as the stepper does.
    double scale = 1.0;
    if (spec.truncation.kind == TruncationKind::NormBall)
        scale = norm_ball_scale(spec.truncation.param, std::pow(w1p_sum, 1.0 / p));
    double dpow = 0.0, wpow = 0.0;
    for (int k = 0; k < quad.size(); ++k) {
        const double w = quad.weights[k];
        dpow += w * v.derivs[k] * v.derivs[k];
        wpow += w * effective_f(spec, scale, u.values[k]) * v.values[k];
    }
    dpow += v.trace0 * v.trace0 + v.traceL * v.traceL;
    wpow += effective_h(spec, scale, u.trace0) * v.trace0 +
            effective_h(spec, scale, u.traceL) * v.traceL;
    rec.damping_power = dpow;
    rec.work_power = wpow;

    rec.G = kNaN;
    rec.Y = kNaN;
    rec.energy_residual = kNaN;
    return rec;
}

EnergyRecord energy_record(const SpectralBasis& basis, const SourceSpec& spec, double p,
                           const ModalState& state, double damping_cum,
                           kernels::Exec exec) {
    const FieldSample u = sample_coeffs(basis, state.c, exec);
    const FieldSample v = sample_coeffs(basis, state.v, exec);
    double cv = 0.0;
    const size_t n = std::min(state.c.size(), state.v.size());
    for (size_t j = 0; j < n; ++j) cv += state.c[j] * state.v[j];
    return energy_record_from_samples(u, v, spec, p, state.t, damping_cum, cv);
}

void attach_run_context(EnergyRecord& rec, double E0_pos, double E0_total,
                        double work_cum, const std::optional<BlowupParameters>& params) {
    rec.G = rec.damping_cum - E0_total;
    rec.energy_residual = rec.E_pos + rec.damping_cum - E0_pos - work_cum;
    if (params && rec.G >= 0.0)
        rec.Y = std::pow(rec.G, 1.0 - params->alpha) + params->beta * rec.Nprime;
    else
        rec.Y = kNaN;
}

double energy_identity_residual(std::span<const EnergyRecord> records, int index) {
    if (index < 0 || index >= static_cast<int>(records.size()))
        throw IndexOutOfRange("energy_identity_residual: sample index");
    double damp = 0.0, work = 0.0;
    for (int i = 0; i < index; ++i) {
        const double dt = records[i + 1].t - records[i].t;
        damp += 0.5 * dt * (records[i].damping_power + records[i + 1].damping_power);
        work += 0.5 * dt * (records[i].work_power + records[i + 1].work_power);
    }
    return records[index].E_pos + damp - records[0].E_pos - work;
}

double gronwall_envelope(double E0_pos, double C_M, double p, double t) {
    return (E0_pos + C_M * t) * std::exp(p * C_M * t);
}

double existence_time_T0(double K, double E0_pos, double C_M, double p, double T1) {
    if (K <= p * E0_pos)
        throw InvalidK("existence_time_T0: need K > p*E0, got K = " + std::to_string(K));
    const double t_ball = (K - p * E0_pos) / (p * C_M);
    const double t_log = (p - 1.0) * std::log(K) / (p * C_M);
    return std::min({T1, t_ball, t_log});
}

BlowupParameters select_blowup_parameters(double p, double q, double r, double G0,
                                          double Nprime0) {
    const RegimeReport regime = classify_exponents(p, q, r);
    if (!regime.blowup_candidate)
        throw NotBlowupCandidate("select_blowup_parameters: exponents outside the "
                                 "blow-up window");
    if (!(G0 > 0.0))
        throw NotBlowupCandidate("select_blowup_parameters: need G(0) = -E(0) > 0");

    BlowupParameters params;
    params.alpha = 0.5 * std::min({(p - 2.0) / (2.0 * p), (p - 2.0) / (q + 1.0),
                                   (p - 2.0) / (r + 1.0)});
    if (Nprime0 < 0.0) {
        const double cap =
            std::pow(G0, 1.0 - params.alpha) / (2.0 * std::abs(Nprime0) + 1e-12);
        params.beta = std::min(0.25, cap);
    } else {
        params.beta = 0.25;
    }
    params.m = std::min(q, r);
    params.fitted_C = 0.0;
    return params;
}

BlowupCertificate blowup_certificate(std::span<const EnergyRecord> records,
                                     const BlowupParameters& params,
                                     double observed_blowup_time) {
    BlowupCertificate cert;
    cert.params = params;
    cert.observed_blowup_time = observed_blowup_time;
    if (records.empty()) {
        cert.reason = "empty trajectory";
        return cert;
    }
    cert.G0 = records[0].G;
    cert.Y0 = records[0].Y;
    if (!(cert.G0 > 0.0)) {
        cert.reason = "G(0) <= 0: initial total energy is not negative";
        return cert;
    }

    bool g_nondecreasing = true;
    for (size_t i = 0; i + 1 < records.size(); ++i)
        if (!(records[i + 1].G >= records[i].G)) g_nondecreasing = false;
    cert.G_positive_increasing = g_nondecreasing;

    bool y_increasing = true;
    double fitted = std::numeric_limits<double>::infinity();
    const double expo = 1.0 / (1.0 - params.alpha);
    for (size_t i = 1; i + 1 < records.size(); ++i) {
        const double y0 = records[i].Y, y1 = records[i + 1].Y;
        if (!std::isfinite(y0) || !std::isfinite(y1)) continue;
        if (!(y1 > y0)) y_increasing = false;
        const double dt = records[i + 1].t - records[i].t;
        if (y0 > 0.0 && dt > 0.0)
            fitted = std::min(fitted, (y1 - y0) / dt / std::pow(y0, expo));
    }
    cert.Y_increasing = y_increasing;
    cert.fitted_C = std::isfinite(fitted) ? fitted : 0.0;

    if (cert.fitted_C > 0.0 && cert.Y0 > 0.0) {
        const double a = params.alpha;
        cert.horizon_derived = (1.0 - a) / (cert.fitted_C * a) *
                               std::pow(cert.Y0, -a / (1.0 - a));
        cert.horizon_paper = std::pow(cert.Y0, (1.0 - a) / a) / cert.fitted_C;
        cert.applicable = true;
    } else {
        cert.reason = "fitted ODE constant is not positive";
    }
    return cert;
}

double npp_identity_value(const SpectralBasis& basis, const SourceSpec& spec, double p,
                          const ModalState& state) {
    const FieldSample u = sample_coeffs(basis, state.c);
    const FieldSample v = sample_coeffs(basis, state.v);
    const QuadratureRule& quad = *u.quad;

    double scale = 1.0;
    if (spec.truncation.kind == TruncationKind::NormBall)
        scale = norm_ball_scale(spec.truncation.param, w1p_norm(u, p));

    double v2 = 0.0, source_u = 0.0, u1p_p = 0.0;
    for (int k = 0; k < quad.size(); ++k) {
        const double w = quad.weights[k];
        v2 += w * v.values[k] * v.values[k];
        source_u += w * effective_f(spec, scale, u.values[k]) * u.values[k];
        u1p_p += w * kernels::abs_power(u.derivs[k], p);
    }
    source_u += effective_h(spec, scale, u.trace0) * u.trace0 +
                effective_h(spec, scale, u.traceL) * u.traceL;
    u1p_p += kernels::abs_power(u.trace0, p) + kernels::abs_power(u.traceL, p);

    return 2.0 * v2 - 2.0 * u1p_p - 2.0 * damping_pairing(v, u) + 2.0 * source_u;
}

}  // namespace plapwave
