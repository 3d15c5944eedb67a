#include "plapwave/run_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "plapwave/errors.hpp"

namespace plapwave {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out << contents;
        if (!out) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open csv: " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw Error("empty csv: " + path.string());
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.header.size());
        const char* ptr = line.data();
        const char* end = line.data() + line.size();
        while (ptr <= end) {
            const char* cell_end = ptr;
            while (cell_end < end && *cell_end != ',') ++cell_end;
            double value = std::numeric_limits<double>::quiet_NaN();
            std::string_view sv(ptr, static_cast<size_t>(cell_end - ptr));
            if (sv != "nan" && sv != "inf" && sv != "-inf") {
                const auto res = std::from_chars(ptr, cell_end, value);
                if (res.ec != std::errc())
                    throw Error("bad csv number '" + std::string(sv) + "' in " +
                                path.string());
            } else if (sv == "inf") {
                value = std::numeric_limits<double>::infinity();
            } else if (sv == "-inf") {
                value = -std::numeric_limits<double>::infinity();
            }
            row.push_back(value);
            if (cell_end == end) break;
            ptr = cell_end + 1;
        }
        if (row.size() != table.header.size())
            throw Error("csv row width mismatch in " + path.string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string trajectory_csv(const Trajectory& traj) {
    const int n = traj.basis->size();
    std::string out = "t";
    for (int j = 1; j <= n; ++j) out += ",c_" + std::to_string(j);
    for (int j = 1; j <= n; ++j) out += ",v_" + std::to_string(j);
    out += "\n";
    for (const ModalState& s : traj.states) {
        out += format_double(s.t);
        for (double c : s.c) {
            out += ',';
            out += format_double(c);
        }
        for (double v : s.v) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string energy_csv(const Trajectory& traj) {
    std::string out =
        "t,kinetic,potential,E_pos,F_int,H_int,E_total,damping_cum,G,N,Nprime,S,Y,"
        "energy_residual\n";
    for (const EnergyRecord& r : traj.records) {
        const double cols[] = {r.t,       r.kinetic,     r.potential, r.E_pos,
                               r.F_int,   r.H_int,       r.E_total,   r.damping_cum,
                               r.G,       r.N,           r.Nprime,    r.S,
                               r.Y,       r.energy_residual};
        bool first = true;
        for (double x : cols) {
            if (!first) out += ',';
            out += format_double(x);
            first = false;
        }
        out += '\n';
    }
    return out;
}

nlohmann::json summary_json(const Trajectory& traj, double wall_seconds) {
    nlohmann::json j;
    j["config"] = config_to_json(traj.config);
    j["termination"] = {{"kind", termination_name(traj.termination)},
                        {"t", traj.termination_time}};
    j["timings"] = {{"wall_seconds", wall_seconds},
                    {"steps_accepted", traj.steps_accepted},
                    {"steps_rejected", traj.steps_rejected}};
    j["samples"] = traj.records.size();
    double sup_E = 0.0;
    for (const EnergyRecord& r : traj.records) sup_E = std::max(sup_E, r.E_pos);
    j["sup_E_pos"] = sup_E;
    j["final_t"] = traj.states.empty() ? 0.0 : traj.states.back().t;
    j["initial_energy"] = {
        {"E_total_projected", traj.records.empty() ? 0.0 : traj.records.front().E_total},
        {"E_total_exact_data", traj.initial_E_total_exact}};
    if (traj.blowup_params) {
        j["blowup_parameters"] = {{"alpha", traj.blowup_params->alpha},
                                  {"beta", traj.blowup_params->beta},
                                  {"m", traj.blowup_params->m}};
        const double observed = traj.termination == Termination::BlowupDetected
                                    ? traj.termination_time
                                    : std::numeric_limits<double>::quiet_NaN();
        const BlowupCertificate cert =
            blowup_certificate(traj.records, *traj.blowup_params, observed);
        nlohmann::json cj;
        cj["applicable"] = cert.applicable;
        if (!cert.reason.empty()) cj["reason"] = cert.reason;
        cj["G0"] = cert.G0;
        cj["Y0"] = cert.Y0;
        cj["G_positive_increasing"] = cert.G_positive_increasing;
        cj["Y_increasing"] = cert.Y_increasing;
        cj["fitted_C"] = cert.fitted_C;
        cj["horizon_derived"] = cert.horizon_derived;
        cj["horizon_paper"] = cert.horizon_paper;
        if (std::isfinite(observed)) cj["observed_blowup_time"] = observed;
        j["blowup_certificate"] = cj;
    } else {
        j["blowup_certificate"] = nullptr;
    }
    return j;
}

void write_run_artifacts(const std::filesystem::path& dir, const Trajectory& traj,
                         double wall_seconds) {
    std::filesystem::create_directories(dir);
    atomic_write_file(dir / "trajectory.csv", trajectory_csv(traj));
    atomic_write_file(dir / "energy.csv", energy_csv(traj));
    atomic_write_file(dir / "summary.json", summary_json(traj, wall_seconds).dump(2) + "\n");
}

nlohmann::json eigenpairs_to_json(std::span<const RobinEigenpair> pairs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const RobinEigenpair& p : pairs)
        arr.push_back({{"j", p.index},
                       {"mu", p.mu},
                       {"lambda", p.lambda},
                       {"norm_const", p.norm_const}});
    return arr;
}

std::vector<RobinEigenpair> eigenpairs_from_json(const nlohmann::json& j) {
    std::vector<RobinEigenpair> pairs;
    for (const auto& item : j) {
        RobinEigenpair p;
        p.index = item.at("j").get<int>();
        p.mu = item.at("mu").get<double>();
        p.lambda = item.at("lambda").get<double>();
        p.norm_const = item.at("norm_const").get<double>();
        pairs.push_back(p);
    }
    return pairs;
}

StoredRun load_run(const std::filesystem::path& dir) {
    StoredRun run;
    std::ifstream in(dir / "summary.json");
    if (!in) throw Error("cannot open " + (dir / "summary.json").string());
    try {
        in >> run.summary;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("summary.json parse error: ") + e.what());
    }
    if (!run.summary.contains("config"))
        throw Error("summary.json lacks a config echo");
    run.config = config_from_json(run.summary.at("config"));
    run.trajectory = read_csv(dir / "trajectory.csv");
    run.energy = read_csv(dir / "energy.csv");
    return run;
}

}  // namespace plapwave
