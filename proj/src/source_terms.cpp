#include "plapwave/source_terms.hpp"

#include <cmath>

#include "plapwave/errors.hpp"

namespace plapwave {

namespace {

// Adaptive Simpson for custom primitives.
double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_from_zero(const std::function<double(double)>& f, double s) {
    if (s == 0.0) return 0.0;
    const double a = 0.0, b = s;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, 1e-12, 40);
}

}  // namespace

double f_eval(const SourceSpec& spec, double s) {
    switch (spec.form) {
        case SourceForm::PowerLaw:
            return (spec.q + 1.0) * kernels::signed_power(s, spec.q);
        case SourceForm::Linear:
            return s;
        case SourceForm::Custom:
            return spec.custom_f ? spec.custom_f(s) : 0.0;
    }
    return 0.0;
}

double h_eval(const SourceSpec& spec, double s) {
    switch (spec.form) {
        case SourceForm::PowerLaw:
            return (spec.r + 1.0) * kernels::signed_power(s, spec.r);
        case SourceForm::Linear:
            return s;
        case SourceForm::Custom:
            return spec.custom_h ? spec.custom_h(s) : 0.0;
    }
    return 0.0;
}

double primitive_F(const SourceSpec& spec, double s) {
    switch (spec.form) {
        case SourceForm::PowerLaw:
            return kernels::abs_power(s, spec.q + 1.0);
        case SourceForm::Linear:
            return 0.5 * s * s;
        case SourceForm::Custom:
            return integrate_from_zero([&](double x) { return f_eval(spec, x); }, s);
    }
    return 0.0;
}

double primitive_H(const SourceSpec& spec, double s) {
    switch (spec.form) {
        case SourceForm::PowerLaw:
            return kernels::abs_power(s, spec.r + 1.0);
        case SourceForm::Linear:
            return 0.5 * s * s;
        case SourceForm::Custom:
            return integrate_from_zero([&](double x) { return h_eval(spec, x); }, s);
    }
    return 0.0;
}

double cutoff_eta(double n, double s) {
    const double a = std::abs(s);
    if (a <= n) return 1.0;
    if (a >= 2.0 * n) return 0.0;
    const double t = 2.0 - a / n;  // in (0, 1) on the transition band
    return t * t * (3.0 - 2.0 * t);
}

double norm_ball_scale(double K, double w1p_norm_u) {
    return w1p_norm_u <= K ? 1.0 : K / w1p_norm_u;
}

std::function<double(double)> truncate_norm_ball(const SourceSpec& spec,
                                                 const DiscreteFunction& u, double p) {
    const double K = spec.truncation.param;
    if (K <= 0.0) throw Error("truncate_norm_ball: need K > 0");
    const double scale = norm_ball_scale(K, w1p_norm(u, p));
    return [spec, scale](double s) { return f_eval(spec, scale * s); };
}

double effective_f(const SourceSpec& spec, double scale, double s) {
    switch (spec.truncation.kind) {
        case TruncationKind::None:
            return f_eval(spec, s);
        case TruncationKind::NormBall:
            return f_eval(spec, scale * s);
        case TruncationKind::Cutoff:
            return f_eval(spec, s) * cutoff_eta(spec.truncation.param, s);
    }
    return 0.0;
}

double effective_h(const SourceSpec& spec, double scale, double s) {
    switch (spec.truncation.kind) {
        case TruncationKind::None:
            return h_eval(spec, s);
        case TruncationKind::NormBall:
            return h_eval(spec, scale * s);
        case TruncationKind::Cutoff:
            return h_eval(spec, s) * cutoff_eta(spec.truncation.param, s);
    }
    return 0.0;
}

RegimeReport classify_exponents(double p, double q, double r) {
    if (!(p > 2.0 && p < 3.0))
        throw InvalidP("classify_exponents: p must lie in (2, 3), got " +
                       std::to_string(p));
    RegimeReport rep;
    rep.p = p;
    rep.q = q;
    rep.r = r;
    rep.q_max_3d = 5.0 * p / (2.0 * (3.0 - p));
    rep.r_max_3d = 3.0 * p / (2.0 * (3.0 - p));
    rep.global_cutoff = 0.5 * p;
    rep.blowup_cutoff = p - 1.0;
    rep.admissible_3d = (q >= 1.0 && q < rep.q_max_3d) && (r >= 1.0 && r < rep.r_max_3d);
    rep.global_guaranteed = rep.admissible_3d && q <= rep.global_cutoff &&
                            r <= rep.global_cutoff;
    rep.blowup_candidate = (q > rep.blowup_cutoff && q < rep.q_max_3d) &&
                           (r > rep.blowup_cutoff && r < rep.r_max_3d);
    rep.geometry_note =
        "exponent thresholds follow the 3D embedding/trace windows; the simulation "
        "geometry is a 1D interval";
    return rep;
}

}  // namespace plapwave
