#include "plapwave/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "plapwave/errors.hpp"
#include "plapwave/galerkin_dynamics.hpp"
#include "plapwave/run_io.hpp"

namespace plapwave {

int sweep_parallelism(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PLAPWAVE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

nlohmann::json sweep_runs(const nlohmann::json& base_config,
                          const std::filesystem::path& out_dir,
                          const SweepOptions& opts) {
    if (opts.values.empty()) throw ConfigError("sweep: empty value list");
    std::string pointer = opts.parameter;
    if (pointer.empty()) throw ConfigError("sweep: missing parameter name");
    if (pointer[0] != '/') {
        // Accept dotted paths as shorthand for JSON pointers.
        pointer = "/" + pointer;
        for (char& ch : pointer)
            if (ch == '.') ch = '/';
    }
    const nlohmann::json::json_pointer jp(pointer);

    struct Row {
        nlohmann::json value;
        std::string dir;
        std::string termination;
        std::string error;
        double wall_seconds = 0.0;
    };
    std::vector<Row> rows(opts.values.size());
    std::vector<SimulationConfig> configs(opts.values.size());
    for (size_t i = 0; i < opts.values.size(); ++i) {
        nlohmann::json patched = base_config;
        patched[jp] = opts.values[i];
        configs[i] = config_from_json(patched);  // validates before any run starts
        char name[32];
        std::snprintf(name, sizeof(name), "run_%03zu", i);
        rows[i].value = opts.values[i];
        rows[i].dir = name;
    }

    const int jobs =
        std::min<int>(sweep_parallelism(opts.jobs), static_cast<int>(opts.values.size()));
    // Concurrent runs use serial kernels; a single run keeps the parallel path.
    const kernels::Exec exec =
        jobs > 1 ? kernels::Exec::Serial : kernels::default_exec();

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= opts.values.size()) return;
            const auto start = std::chrono::steady_clock::now();
            try {
                const Trajectory traj = simulate(configs[i], exec);
                const double wall =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                write_run_artifacts(out_dir / rows[i].dir, traj, wall);
                rows[i].termination = termination_name(traj.termination);
                rows[i].wall_seconds = wall;
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    nlohmann::json index;
    index["parameter"] = opts.parameter;
    index["jobs"] = jobs;
    index["runs"] = nlohmann::json::array();
    bool all_ok = true;
    for (const Row& row : rows) {
        nlohmann::json r;
        r["value"] = row.value;
        r["dir"] = row.dir;
        if (row.error.empty()) {
            r["termination"] = row.termination;
            r["wall_seconds"] = row.wall_seconds;
        } else {
            r["error"] = row.error;
            all_ok = false;
        }
        index["runs"].push_back(r);
    }
    index["all_ok"] = all_ok;
    atomic_write_file(out_dir / "index.json", index.dump(2) + "\n");
    return index;
}

}  // namespace plapwave
