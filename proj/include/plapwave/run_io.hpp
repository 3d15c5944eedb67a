#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "plapwave/galerkin_dynamics.hpp"

namespace plapwave {

// Shortest round-trip formatting (std::to_chars); '.' decimal, no locale.
std::string format_double(double x);

// Writes via a temp file in the same directory followed by rename.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);

std::string trajectory_csv(const Trajectory& traj);
std::string energy_csv(const Trajectory& traj);
nlohmann::json summary_json(const Trajectory& traj, double wall_seconds);

// trajectory.csv, energy.csv, summary.json under `dir` (created if needed).
void write_run_artifacts(const std::filesystem::path& dir, const Trajectory& traj,
                         double wall_seconds);

// Rebuilds states/records from a run directory written by
// write_run_artifacts; config is taken from the summary echo.
struct StoredRun {
    SimulationConfig config;
    nlohmann::json summary;
    CsvTable trajectory;
    CsvTable energy;
};

StoredRun load_run(const std::filesystem::path& dir);

// Eigenpair list as emitted by the spectrum subcommand; values survive the
// round trip exactly (shortest round-trip float serialization).
nlohmann::json eigenpairs_to_json(std::span<const RobinEigenpair> pairs);
std::vector<RobinEigenpair> eigenpairs_from_json(const nlohmann::json& j);

}  // namespace plapwave
