#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plapwave/modal_state.hpp"
#include "plapwave/source_terms.hpp"

namespace plapwave {

// One time sample of every tracked functional.
//   E_pos   = kinetic + potential = (1/2)||u'||_2^2 + (1/p)||u||_{1,p}^p
//   E_total = E_pos - F_int - H_int
//   G       = damping_cum - E_total(0)
//   N       = ||u||_2^2,  Nprime = 2 (u', u) = 2 c.v
//   S       = ||u||_{q+1}^{q+1} + |u|_{r+1}^{r+1} (boundary)
//   Y       = G^{1-alpha} + beta*Nprime (nan when parameters do not apply)
// energy_residual is the cumulative identity defect
//   E_pos(t) + damping_cum(t) - E_pos(0) - work_cum(t).
struct EnergyRecord {
    double t = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double E_pos = 0.0;
    double F_int = 0.0;
    double H_int = 0.0;
    double E_total = 0.0;
    double damping_cum = 0.0;
    double G = 0.0;
    double N = 0.0;
    double Nprime = 0.0;
    double S = 0.0;
    double Y = 0.0;
    double energy_residual = 0.0;

    // Instantaneous rates used by the trapezoid accumulators: damping power
    // ||u'||_{1,2}^2 and source work f(u)u' + boundary terms.
    double damping_power = 0.0;
    double work_power = 0.0;
};

struct BlowupParameters {
    double alpha = 0.0;  // in (0, 1/2)
    double beta = 0.0;   // in (0, 1/2)
    double m = 0.0;      // min(q, r)
    double fitted_C = 0.0;
};

// Functionals of a single state, all spatial integrals by quadrature.
// Nprime uses the coefficient form 2 c.v (orthonormal basis).
EnergyRecord energy_record(const SpectralBasis& basis, const SourceSpec& spec, double p,
                           const ModalState& state, double damping_cum,
                           kernels::Exec exec = kernels::default_exec());

// Same functionals evaluated on explicit nodal data (used by oracles and for
// exact initial data); cv_dot supplies the N' shortcut when known.
EnergyRecord energy_record_from_samples(const FieldSample& u, const FieldSample& v,
                                        const SourceSpec& spec, double p, double t,
                                        double damping_cum, double cv_dot);

// Fills G / Y / energy_residual given run-level context.
void attach_run_context(EnergyRecord& rec, double E0_pos, double E0_total,
                        double work_cum, const std::optional<BlowupParameters>& params);

// Cumulative identity defect at sample `index`, recomputed from the stored
// rates by the trapezoid rule:
//   E_pos(t) + int_0^t ||u'||_{1,2}^2 - E_pos(0) - int_0^t (f(u)u' + h(u)u').
double energy_identity_residual(std::span<const EnergyRecord> records, int index);

// (E0 + C_M t) exp(p C_M t).
double gronwall_envelope(double E0_pos, double C_M, double p, double t);

// min{T1, (K - p E0)/(p C_M), (p-1) ln K / (p C_M)}.  Throws InvalidK unless
// K > p*E0.
double existence_time_T0(double K, double E0_pos, double C_M, double p, double T1);

// alpha = (1/2) min{(p-2)/(2p), (p-2)/(q+1), (p-2)/(r+1)}; beta chosen so
// Y(0) = G0^{1-alpha} + beta*Nprime0 > 0.  Throws NotBlowupCandidate when the
// exponent window p-1 < min(q,r) fails or G0 <= 0.
BlowupParameters select_blowup_parameters(double p, double q, double r, double G0,
                                          double Nprime0);

struct BlowupCertificate {
    bool applicable = false;
    std::string reason;          // set when not applicable
    bool G_positive_increasing = false;
    bool Y_increasing = false;   // strictly, over samples after t = 0
    double G0 = 0.0;
    double Y0 = 0.0;
    double fitted_C = 0.0;
    double horizon_derived = 0.0;   // (1-alpha)/(C alpha) Y0^{-alpha/(1-alpha)}
    double horizon_paper = 0.0;     // Y0^{(1-alpha)/alpha} / C (reported as printed)
    double observed_blowup_time = 0.0;  // nan when the run did not blow up
    BlowupParameters params;
};

// Fits the ODE-inequality constant C = min over consecutive samples of
// (dY/dt) / Y^{1/(1-alpha)} and derives the blow-up horizon; both horizon
// forms are reported.
BlowupCertificate blowup_certificate(std::span<const EnergyRecord> records,
                                     const BlowupParameters& params,
                                     double observed_blowup_time);

// Right-hand side of the second-derivative identity for N(t):
//   2||u'||_2^2 - 2||u||_{1,p}^p - 2<-Delta_2 u', u>
//   + 2(q+1)||u||_{q+1}^{q+1} + 2(r+1)|u|_{r+1}^{r+1}.
double npp_identity_value(const SpectralBasis& basis, const SourceSpec& spec, double p,
                          const ModalState& state);

}  // namespace plapwave
