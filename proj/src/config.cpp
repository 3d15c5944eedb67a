#include "plapwave/config.hpp"

#include <fstream>

#include "plapwave/errors.hpp"

namespace plapwave {

namespace {

using nlohmann::json;

std::string form_name(SourceForm f) {
    switch (f) {
        case SourceForm::PowerLaw: return "power_law";
        case SourceForm::Linear: return "linear";
        case SourceForm::Custom: return "custom";
    }
    return "power_law";
}

SourceForm form_from_name(const std::string& s) {
    if (s == "power_law") return SourceForm::PowerLaw;
    if (s == "linear") return SourceForm::Linear;
    if (s == "custom")
        throw ConfigError("sources.form: custom sources are in-process only and "
                          "cannot be loaded from JSON");
    throw ConfigError("sources.form: unknown form '" + s + "'");
}

std::string profile_kind_name(InitialProfile::Kind k) {
    switch (k) {
        case InitialProfile::Kind::Constant: return "constant";
        case InitialProfile::Kind::Eigenmode: return "eigenmode";
        case InitialProfile::Kind::Mix: return "mix";
        case InitialProfile::Kind::Polynomial: return "polynomial";
    }
    return "constant";
}

InitialProfile profile_from_json(const json& j, const std::string& where) {
    InitialProfile prof;
    const std::string kind = j.value("kind", "constant");
    if (kind == "constant") {
        prof.kind = InitialProfile::Kind::Constant;
        prof.amplitude = j.value("amplitude", 0.0);
    } else if (kind == "eigenmode") {
        prof.kind = InitialProfile::Kind::Eigenmode;
        prof.mode = j.value("mode", 1);
        prof.amplitude = j.value("amplitude", 1.0);
        if (prof.mode < 1) throw ConfigError(where + ": eigenmode index must be >= 1");
    } else if (kind == "mix") {
        prof.kind = InitialProfile::Kind::Mix;
        prof.modes = j.value("modes", std::vector<int>{});
        prof.amplitudes = j.value("amplitudes", std::vector<double>{});
        if (prof.modes.size() != prof.amplitudes.size())
            throw ConfigError(where + ": mix modes/amplitudes length mismatch");
        for (int m : prof.modes)
            if (m < 1) throw ConfigError(where + ": mix mode index must be >= 1");
    } else if (kind == "polynomial") {
        prof.kind = InitialProfile::Kind::Polynomial;
        prof.poly_coeffs = j.value("coefficients", std::vector<double>{});
    } else {
        throw ConfigError(where + ": unknown initial profile kind '" + kind + "'");
    }
    return prof;
}

json profile_to_json(const InitialProfile& prof) {
    json j;
    j["kind"] = profile_kind_name(prof.kind);
    switch (prof.kind) {
        case InitialProfile::Kind::Constant:
            j["amplitude"] = prof.amplitude;
            break;
        case InitialProfile::Kind::Eigenmode:
            j["mode"] = prof.mode;
            j["amplitude"] = prof.amplitude;
            break;
        case InitialProfile::Kind::Mix:
            j["modes"] = prof.modes;
            j["amplitudes"] = prof.amplitudes;
            break;
        case InitialProfile::Kind::Polynomial:
            j["coefficients"] = prof.poly_coeffs;
            break;
    }
    return j;
}

}  // namespace

json source_spec_to_json(const SourceSpec& spec) {
    json j;
    j["form"] = form_name(spec.form);
    j["q"] = spec.q;
    j["r"] = spec.r;
    switch (spec.truncation.kind) {
        case TruncationKind::None:
            j["truncation"] = {{"kind", "none"}};
            break;
        case TruncationKind::NormBall:
            j["truncation"] = {{"kind", "norm_ball"}, {"K", spec.truncation.param}};
            break;
        case TruncationKind::Cutoff:
            j["truncation"] = {{"kind", "cutoff"}, {"n", spec.truncation.param}};
            break;
    }
    if (spec.growth_constant > 0.0) j["growth_constant"] = spec.growth_constant;
    if (spec.lipschitz_f) j["lipschitz_f"] = *spec.lipschitz_f;
    if (spec.lipschitz_h) j["lipschitz_h"] = *spec.lipschitz_h;
    return j;
}

SourceSpec source_spec_from_json(const json& j) {
    SourceSpec spec;
    spec.form = form_from_name(j.value("form", "power_law"));
    spec.q = j.value("q", 1.0);
    spec.r = j.value("r", 1.0);
    if (spec.q < 1.0 || spec.r < 1.0)
        throw ConfigError("sources: exponents q, r must be >= 1");
    if (j.contains("truncation")) {
        const json& t = j.at("truncation");
        const std::string kind = t.value("kind", "none");
        if (kind == "none") {
            spec.truncation = {TruncationKind::None, 0.0};
        } else if (kind == "norm_ball") {
            spec.truncation = {TruncationKind::NormBall, t.value("K", 0.0)};
            if (spec.truncation.param <= 0.0)
                throw ConfigError("sources.truncation: norm_ball needs K > 0");
        } else if (kind == "cutoff") {
            spec.truncation = {TruncationKind::Cutoff, t.value("n", 0.0)};
            if (spec.truncation.param <= 0.0)
                throw ConfigError("sources.truncation: cutoff needs n > 0");
        } else {
            throw ConfigError("sources.truncation: unknown kind '" + kind + "'");
        }
    }
    spec.growth_constant = j.value("growth_constant", 0.0);
    if (j.contains("lipschitz_f")) spec.lipschitz_f = j.at("lipschitz_f").get<double>();
    if (j.contains("lipschitz_h")) spec.lipschitz_h = j.at("lipschitz_h").get<double>();
    return spec;
}

SimulationConfig config_from_json(const json& j) {
    SimulationConfig cfg;
    try {
        cfg.p = j.at("p").get<double>();
        if (!(cfg.p > 2.0 && cfg.p < 3.0))
            throw ConfigError("p must lie in (2, 3)");
        cfg.sources = source_spec_from_json(j.value("sources", json::object()));
        cfg.domain.length = j.value("domain", json::object()).value("length", 3.14159265358979323846);
        if (cfg.domain.length <= 0.0) throw ConfigError("domain.length must be > 0");
        cfg.modes = j.value("modes", 16);
        if (cfg.modes < 1) throw ConfigError("modes must be >= 1");
        const json quad = j.value("quadrature", json::object());
        cfg.quad_subintervals = quad.value("subintervals", 256);
        cfg.quad_points = quad.value("points", 8);
        if (cfg.quad_subintervals < 1 || cfg.quad_points < 1)
            throw ConfigError("quadrature parameters must be >= 1");
        cfg.dt0 = j.value("dt0", 1e-3);
        if (cfg.dt0 <= 0.0) throw ConfigError("dt0 must be > 0");
        cfg.t_end = j.value("t_end", 1.0);
        if (cfg.t_end <= 0.0) throw ConfigError("t_end must be > 0");
        cfg.blowup_threshold = j.value("blowup_threshold", 1e6);
        cfg.residual_tol = j.value("residual_tol", 1e-3);
        const std::string scheme = j.value("scheme", "imex");
        if (scheme == "imex")
            cfg.scheme = Scheme::Imex;
        else if (scheme == "rk4")
            cfg.scheme = Scheme::Rk4;
        else
            throw ConfigError("scheme must be 'imex' or 'rk4'");
        const json init = j.value("initial_data", json::object());
        cfg.initial_data.u0 =
            profile_from_json(init.value("u0", json::object()), "initial_data.u0");
        cfg.initial_data.u1 =
            profile_from_json(init.value("u1", json::object()), "initial_data.u1");
        if (j.contains("alpha") && !j.at("alpha").is_string())
            cfg.alpha = j.at("alpha").get<double>();
        if (j.contains("beta") && !j.at("beta").is_string())
            cfg.beta = j.at("beta").get<double>();
        cfg.seed = j.value("seed", 0ull);
        const std::string expect = j.value("expect", "none");
        if (expect == "none")
            cfg.expect = Expectation::None;
        else if (expect == "global")
            cfg.expect = Expectation::Global;
        else if (expect == "blowup")
            cfg.expect = Expectation::Blowup;
        else
            throw ConfigError("expect must be 'none', 'global' or 'blowup'");
        cfg.allow_inadmissible = j.value("allow_inadmissible", false);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

json config_to_json(const SimulationConfig& cfg) {
    json j;
    j["p"] = cfg.p;
    j["sources"] = source_spec_to_json(cfg.sources);
    j["domain"] = {{"length", cfg.domain.length}};
    j["modes"] = cfg.modes;
    j["quadrature"] = {{"subintervals", cfg.quad_subintervals},
                       {"points", cfg.quad_points}};
    j["dt0"] = cfg.dt0;
    j["t_end"] = cfg.t_end;
    j["blowup_threshold"] = cfg.blowup_threshold;
    j["residual_tol"] = cfg.residual_tol;
    j["scheme"] = cfg.scheme == Scheme::Imex ? "imex" : "rk4";
    j["initial_data"] = {{"u0", profile_to_json(cfg.initial_data.u0)},
                         {"u1", profile_to_json(cfg.initial_data.u1)}};
    j["alpha"] = cfg.alpha ? json(*cfg.alpha) : json("auto");
    j["beta"] = cfg.beta ? json(*cfg.beta) : json("auto");
    j["seed"] = cfg.seed;
    switch (cfg.expect) {
        case Expectation::None: j["expect"] = "none"; break;
        case Expectation::Global: j["expect"] = "global"; break;
        case Expectation::Blowup: j["expect"] = "blowup"; break;
    }
    j["allow_inadmissible"] = cfg.allow_inadmissible;
    return j;
}

SimulationConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

}  // namespace plapwave
