#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace plapwave {

struct SweepOptions {
    std::string parameter;            // config field as a JSON pointer, e.g. /dt0
    std::vector<nlohmann::json> values;
    int jobs = 0;                     // 0 = auto (PLAPWAVE_THREADS or hw)
};

// Runs one simulation per value (concurrently when jobs > 1), each into
// run_NNN/ under `out_dir`, and writes index.json.  Per-run outputs are
// byte-identical regardless of parallelism.  Throws ConfigError on an empty
// value list or an unknown parameter path.
nlohmann::json sweep_runs(const nlohmann::json& base_config,
                          const std::filesystem::path& out_dir,
                          const SweepOptions& opts);

// Parallelism cap: PLAPWAVE_THREADS when set, else hardware concurrency.
int sweep_parallelism(int requested);

}  // namespace plapwave
