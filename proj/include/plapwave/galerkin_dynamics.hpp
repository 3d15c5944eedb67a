#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "plapwave/config.hpp"
#include "plapwave/energy_ledger.hpp"
#include "plapwave/modal_state.hpp"

namespace plapwave {

enum class Termination { Completed, BlowupDetected, DtUnderflow };

std::string termination_name(Termination t);

struct Trajectory {
    SimulationConfig config;
    std::shared_ptr<const SpectralBasis> basis;
    std::vector<ModalState> states;
    std::vector<EnergyRecord> records;
    Termination termination = Termination::Completed;
    double termination_time = 0.0;
    long steps_accepted = 0;
    long steps_rejected = 0;
    // Total energy of the exact (pre-projection) initial data, evaluated by
    // quadrature on the closed-form profiles.
    double initial_E_total_exact = 0.0;
    std::optional<BlowupParameters> blowup_params;
};

// Modal acceleration a_j = -P_j(c) - lambda_j v_j + Fsrc_j(c) where P_j is
// the p-Laplacian pairing against w_j, the damping matrix is diag(lambda_j),
// and Fsrc collects the interior and boundary source loads.  Throws
// NonFiniteValue if any component is not finite.
std::vector<double> assemble_acceleration(const SpectralBasis& basis,
                                          const SourceSpec& spec, double p,
                                          const ModalState& state,
                                          kernels::Exec exec = kernels::default_exec());

// One step of the semi-implicit scheme: stiff linear damping implicit and
// diagonal, p-Laplacian and sources explicit:
//   v+ = (v + dt (-P(c) + Fsrc(c))) / (1 + dt lambda),  c+ = c + dt v+.
ModalState step_imex(const SpectralBasis& basis, const SourceSpec& spec, double p,
                     const ModalState& state, double dt,
                     kernels::Exec exec = kernels::default_exec());

// Classical explicit RK4 on the first-order system; cross-validation path.
ModalState step_rk4(const SpectralBasis& basis, const SourceSpec& spec, double p,
                    const ModalState& state, double dt,
                    kernels::Exec exec = kernels::default_exec());

// Nodal samples of an initial profile (closed forms, no projection).
FieldSample sample_profile(const SpectralBasis& basis, const InitialProfile& profile);

// Modal coefficients of the initial data: eigenmode content is assigned
// directly, other profiles are L2-projected by quadrature.
std::vector<double> project_initial(const SpectralBasis& basis,
                                    const InitialProfile& profile);

// Integrates the modal system until t_end, blow-up detection (threshold
// crossing with monotone growth over the trailing samples), or dt underflow
// under adaptive halving.  Deterministic for a fixed config; `exec` affects
// speed only, never results.
Trajectory simulate(const SimulationConfig& config,
                    kernels::Exec exec = kernels::default_exec());

// Residual of the time-integrated weak identity against w_j at recorded
// sample `index`, time integrals by the trapezoid rule:
//   (u'(t), w_j) - (u'(0), w_j) + int <-Delta_p u, w_j> + int <-Delta_2 u', w_j>
//   - int (f(u), w_j) - int h(u(Gamma)) w_j(Gamma).
double weak_residual(const Trajectory& traj, int j, int index);

}  // namespace plapwave
