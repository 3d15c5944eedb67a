#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plapwave/source_terms.hpp"

namespace plapwave {

enum class Scheme { Imex, Rk4 };

enum class Expectation { None, Global, Blowup };

// Closed-form initial profiles; everything the scenarios need.
struct InitialProfile {
    enum class Kind { Constant, Eigenmode, Mix, Polynomial } kind = Kind::Constant;
    double amplitude = 0.0;            // Constant, Eigenmode
    int mode = 1;                      // Eigenmode
    std::vector<int> modes;            // Mix
    std::vector<double> amplitudes;    // Mix
    std::vector<double> poly_coeffs;   // Polynomial: c0 + c1 x + ...
};

struct InitialData {
    InitialProfile u0;
    InitialProfile u1;
};

// Full reproducible description of a run.
struct SimulationConfig {
    double p = 2.5;
    SourceSpec sources;
    DomainSpec domain;
    int modes = 16;
    int quad_subintervals = 256;
    int quad_points = 8;
    double dt0 = 1e-3;
    double t_end = 1.0;
    double blowup_threshold = 1e6;
    double residual_tol = 1e-3;  // relative per-step tolerance; <= 0 disables adaptivity
    Scheme scheme = Scheme::Imex;
    InitialData initial_data;
    std::optional<double> alpha;  // nullopt = auto
    std::optional<double> beta;
    std::uint64_t seed = 0;
    Expectation expect = Expectation::None;
    bool allow_inadmissible = false;
};

// Throws ConfigError on invalid or out-of-range fields.  Round-trips
// losslessly: config_from_json(config_to_json(c)) reproduces every value.
SimulationConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimulationConfig& cfg);
SimulationConfig load_config_file(const std::string& path);

nlohmann::json source_spec_to_json(const SourceSpec& spec);
SourceSpec source_spec_from_json(const nlohmann::json& j);

}  // namespace plapwave
