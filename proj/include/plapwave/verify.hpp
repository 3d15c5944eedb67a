#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace plapwave {

struct VerifyOptions {
    double residual_tol = 1e-2;     // cap on the recomputed energy residual
    double ledger_tol = 1e-9;       // stored-vs-recomputed ledger mismatch (relative)
    int dual_norm_states = 8;       // states sampled for the operator-norm bound
    int dual_norm_trials = 32;      // random test functions per sampled state
};

struct VerifyResult {
    bool pass = true;
    std::vector<std::string> violations;  // named invariants that failed
    double max_energy_residual = 0.0;
    double max_dual_ratio = 0.0;
    nlohmann::json report;
};

// Re-checks invariants on a stored run directory: energy positivity,
// G monotonicity, stored-ledger consistency against recomputation from the
// trajectory, the recomputed energy-identity residual, and the operator-norm
// bound on sampled states.
VerifyResult verify_run(const std::filesystem::path& dir, const VerifyOptions& opts);

}  // namespace plapwave
