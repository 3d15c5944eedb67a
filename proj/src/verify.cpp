#include "plapwave/verify.hpp"

#include <algorithm>
#include <cmath>

#include "plapwave/errors.hpp"
#include "plapwave/run_io.hpp"

namespace plapwave {

namespace {

bool close(double a, double b, double tol) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

VerifyResult verify_run(const std::filesystem::path& dir, const VerifyOptions& opts) {
    const StoredRun run = load_run(dir);
    VerifyResult result;
    auto fail = [&](const std::string& name, const std::string& detail) {
        result.pass = false;
        result.violations.push_back(name);
        result.report["checks"][name] = {{"pass", false}, {"detail", detail}};
    };
    auto ok = [&](const std::string& name) {
        result.report["checks"][name] = {{"pass", true}};
    };

    const CsvTable& energy = run.energy;
    const CsvTable& states = run.trajectory;
    const int col_E = energy.column("E_pos");
    const int col_G = energy.column("G");
    const int col_kin = energy.column("kinetic");
    const int col_pot = energy.column("potential");
    if (col_E < 0 || col_G < 0 || col_kin < 0 || col_pot < 0)
        throw Error("verify: energy.csv lacks expected columns");

    // Positivity of the stored ledger.
    {
        bool pass = true;
        std::string detail;
        for (size_t i = 0; i < energy.rows.size(); ++i) {
            const auto& row = energy.rows[i];
            if (!(row[col_E] >= 0.0) || !(row[col_kin] >= 0.0) ||
                !(row[col_pot] >= 0.0)) {
                pass = false;
                detail = "negative energy entry at sample " + std::to_string(i);
                break;
            }
        }
        pass ? ok("energy_positivity") : fail("energy_positivity", detail);
    }

    // G is nondecreasing along the stored run.
    {
        bool pass = true;
        std::string detail;
        for (size_t i = 0; i + 1 < energy.rows.size(); ++i) {
            if (!(energy.rows[i + 1][col_G] >= energy.rows[i][col_G])) {
                pass = false;
                detail = "G decreases at sample " + std::to_string(i + 1);
                break;
            }
        }
        pass ? ok("G_monotonicity") : fail("G_monotonicity", detail);
    }

    // Rebuild the ledger from the stored states and compare.
    const SimulationConfig& cfg = run.config;
    const QuadratureRule quad = composite_gauss_legendre(
        cfg.domain.length, cfg.quad_subintervals, cfg.quad_points);
    const SpectralBasis basis = build_basis(cfg.domain, cfg.modes, quad);
    const int n = basis.size();
    if (static_cast<int>(states.header.size()) != 1 + 2 * n)
        throw Error("verify: trajectory.csv width does not match config modes");

    std::vector<ModalState> modal(states.rows.size());
    std::vector<EnergyRecord> recomputed(states.rows.size());
    for (size_t i = 0; i < states.rows.size(); ++i) {
        const auto& row = states.rows[i];
        modal[i].t = row[0];
        modal[i].c.assign(row.begin() + 1, row.begin() + 1 + n);
        modal[i].v.assign(row.begin() + 1 + n, row.begin() + 1 + 2 * n);
        recomputed[i] = energy_record(basis, cfg.sources, cfg.p, modal[i], 0.0);
    }
    std::optional<BlowupParameters> params;
    if (!recomputed.empty()) {
        if (cfg.alpha && cfg.beta) {
            params = BlowupParameters{*cfg.alpha, *cfg.beta,
                                      std::min(cfg.sources.q, cfg.sources.r), 0.0};
        } else {
            try {
                params = select_blowup_parameters(cfg.p, cfg.sources.q, cfg.sources.r,
                                                  -recomputed[0].E_total,
                                                  recomputed[0].Nprime);
                if (cfg.alpha) params->alpha = *cfg.alpha;
                if (cfg.beta) params->beta = *cfg.beta;
            } catch (const NotBlowupCandidate&) {
                params = std::nullopt;
            }
        }
    }
    double damping_cum = 0.0, work_cum = 0.0;
    for (size_t i = 0; i < recomputed.size(); ++i) {
        if (i > 0) {
            const double d = recomputed[i].t - recomputed[i - 1].t;
            damping_cum +=
                0.5 * d * (recomputed[i - 1].damping_power + recomputed[i].damping_power);
            work_cum += 0.5 * d * (recomputed[i - 1].work_power + recomputed[i].work_power);
        }
        recomputed[i].damping_cum = damping_cum;
        attach_run_context(recomputed[i], recomputed[0].E_pos, recomputed[0].E_total,
                           work_cum, params);
    }

    {
        bool pass = energy.rows.size() == recomputed.size();
        std::string detail = pass ? "" : "sample count mismatch";
        static const char* names[] = {"t",       "kinetic", "potential",   "E_pos",
                                      "F_int",   "H_int",   "E_total",     "damping_cum",
                                      "G",       "N",       "Nprime",      "S",
                                      "Y",       "energy_residual"};
        for (size_t i = 0; pass && i < energy.rows.size(); ++i) {
            const EnergyRecord& r = recomputed[i];
            const double vals[] = {r.t,     r.kinetic, r.potential, r.E_pos,
                                   r.F_int, r.H_int,   r.E_total,   r.damping_cum,
                                   r.G,     r.N,       r.Nprime,    r.S,
                                   r.Y,     r.energy_residual};
            for (int c = 0; c < 14; ++c) {
                const int col = energy.column(names[c]);
                if (col < 0) continue;
                if (!close(energy.rows[i][col], vals[c], opts.ledger_tol)) {
                    pass = false;
                    detail = std::string("stored ") + names[c] + " at sample " +
                             std::to_string(i) + " differs from recomputation";
                    break;
                }
            }
        }
        pass ? ok("ledger_consistency") : fail("ledger_consistency", detail);
    }

    // Recomputed energy-identity residual stays under the tolerance.
    {
        double max_res = 0.0;
        for (size_t i = 0; i < recomputed.size(); ++i)
            max_res = std::max(max_res, std::abs(recomputed[i].energy_residual));
        result.max_energy_residual = max_res;
        result.report["max_energy_residual"] = max_res;
        max_res <= opts.residual_tol
            ? ok("energy_residual")
            : fail("energy_residual", "max |residual| = " + std::to_string(max_res) +
                                          " exceeds " + std::to_string(opts.residual_tol));
    }

    // Operator-norm bound on sampled states.
    {
        bool pass = true;
        std::string detail;
        double max_ratio = 0.0;
        const int count = std::min<int>(opts.dual_norm_states,
                                        static_cast<int>(modal.size()));
        for (int s = 0; s < count && pass; ++s) {
            const size_t idx = modal.size() <= 1
                                   ? 0
                                   : s * (modal.size() - 1) / std::max(1, count - 1);
            DiscreteFunction u(basis, modal[idx].c);
            try {
                const DualNormReport rep = dual_norm_bound_check(
                    u, cfg.p, opts.dual_norm_trials, cfg.seed + idx);
                max_ratio = std::max(max_ratio, rep.max_ratio);
            } catch (const BoundViolation& e) {
                pass = false;
                detail = e.what();
            }
        }
        result.max_dual_ratio = max_ratio;
        result.report["max_dual_ratio"] = max_ratio;
        pass ? ok("dual_norm_bound") : fail("dual_norm_bound", detail);
    }

    result.report["pass"] = result.pass;
    result.report["violations"] = result.violations;
    return result;
}

}  // namespace plapwave
