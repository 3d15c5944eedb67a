#pragma once

#include <functional>
#include <optional>
#include <string>

#include "plapwave/function_space.hpp"

namespace plapwave {

enum class SourceForm { PowerLaw, Linear, Custom };

enum class TruncationKind { None, NormBall, Cutoff };

struct Truncation {
    TruncationKind kind = TruncationKind::None;
    double param = 0.0;  // K for NormBall, n for Cutoff
};

// Interior source f and boundary source h.
//   power_law: f(s) = (q+1)|s|^{q-1} s,  h(s) = (r+1)|s|^{r-1} s
//   linear:    f(s) = h(s) = s
//   custom:    user-supplied callables with a declared growth constant
struct SourceSpec {
    SourceForm form = SourceForm::PowerLaw;
    double q = 2.0;
    double r = 2.0;
    Truncation truncation;
    double growth_constant = 0.0;  // C in |f(s)| <= C(|s|^q + 1), custom forms
    std::optional<double> lipschitz_f;
    std::optional<double> lipschitz_h;
    std::function<double(double)> custom_f;
    std::function<double(double)> custom_h;
};

double f_eval(const SourceSpec& spec, double s);
double h_eval(const SourceSpec& spec, double s);

// Primitives F(s) = int_0^s f, H(s) = int_0^s h.  Closed form for power-law
// (|s|^{q+1}) and linear (s^2/2); adaptive Simpson for custom forms.
double primitive_F(const SourceSpec& spec, double s);
double primitive_H(const SourceSpec& spec, double s);

// C^1 cutoff: 1 on |s| <= n, 0 on |s| >= 2n, smoothstep in between; the
// derivative bound |eta_n'| <= 1.5/n follows from the smoothstep max slope.
double cutoff_eta(double n, double s);

// Norm-ball truncation f_K(u): pointwise f applied to min(1, K/||u||_{1,p}) u.
// The scale is computed once per call from the current state (nonlocal).
std::function<double(double)> truncate_norm_ball(const SourceSpec& spec,
                                                 const DiscreteFunction& u, double p);
double norm_ball_scale(double K, double w1p_norm_u);

// Pointwise source values after the active truncation.  `scale` is the
// norm-ball factor (1 inside the ball); cutoff multiplies by eta_n.
double effective_f(const SourceSpec& spec, double scale, double s);
double effective_h(const SourceSpec& spec, double scale, double s);

struct RegimeReport {
    double p = 0.0, q = 0.0, r = 0.0;
    double q_max_3d = 0.0;    // 5p / (2(3-p))
    double r_max_3d = 0.0;    // 3p / (2(3-p))
    double global_cutoff = 0.0;   // p/2
    double blowup_cutoff = 0.0;   // p-1
    bool admissible_3d = false;
    bool global_guaranteed = false;
    bool blowup_candidate = false;
    // The exponent windows are the 3D embedding thresholds even though the
    // simulation geometry is a 1D interval.
    std::string geometry_note;
};

// Throws InvalidP unless 2 < p < 3.
RegimeReport classify_exponents(double p, double q, double r);

}  // namespace plapwave
