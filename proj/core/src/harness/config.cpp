#include "bmofem/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>
#include <sstream>

#include <json.hpp>

#include "bmofem/errors.hpp"
#include "bmofem/harness/fixtures.hpp"
#include "bmofem/mesh.hpp"

namespace bmofem::harness {

using nlohmann::json;

std::string to_string(StudyKind kind) {
    switch (kind) {
        case StudyKind::stability: return "stability";
        case StudyKind::convergence: return "convergence";
        case StudyKind::hodge_suite: return "hodge-suite";
        case StudyKind::coeff_decay: return "coeff-decay";
        case StudyKind::bmo_diagnostics: return "bmo-diagnostics";
    }
    return "unknown";
}

StudyKind parse_study_kind(const std::string& name) {
    for (StudyKind k : {StudyKind::stability, StudyKind::convergence, StudyKind::hodge_suite,
                        StudyKind::coeff_decay, StudyKind::bmo_diagnostics}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ConfigError("unknown experiment kind '" + name + "'");
}

std::pair<int, int> parse_level_range(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ConfigError("malformed level range '" + text + "'");
        }
        if (used != s.size()) {
            throw ConfigError("malformed level range '" + text + "'");
        }
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(text);
        return {v, v};
    }
    return {to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (level_min < 0 || level_max > kMaxMeshLevel || level_min > level_max) {
        fail("levels must satisfy 0 <= min <= max <= " + std::to_string(kMaxMeshLevel));
    }
    if (!(p >= 1.1 && p <= 10.0)) {
        fail("p must lie in [1.1, 10]");
    }
    if (!(p_hat >= 1.1 && p_hat <= 10.0)) {
        fail("p_hat must lie in [1.1, 10]");
    }
    if (kind == StudyKind::convergence) {
        if (!(p_hat <= p)) {
            fail("convergence studies need 1.1 <= p_hat <= p <= 10");
        }
        const int ref = effective_ref_level();
        if (ref < level_max + 2 || ref > kMaxMeshLevel) {
            fail("reference level must be at least level_max + 2 and at most " +
                 std::to_string(kMaxMeshLevel));
        }
    }
    if (!(r >= 1.1 && r <= 10.0)) {
        fail("r must lie in [1.1, 10]");
    }
    if (!(quad_tol >= 1e-12 && quad_tol <= 1e-4)) {
        fail("quad_tol must lie in [1e-12, 1e-4]");
    }
    if (!(solver_tol >= 1e-14 && solver_tol <= 1e-6)) {
        fail("solver_tol must lie in [1e-14, 1e-6]");
    }
    if (workers < 1) {
        fail("workers must be positive");
    }
    if (samples < 1) {
        fail("samples must be positive");
    }
    if (x0.size() != 2) {
        fail("x0 must have two coordinates");
    }
    auto known = [](const std::vector<std::string>& names, const std::string& name) {
        return std::find(names.begin(), names.end(), name) != names.end();
    };
    if (!known(coefficient_names(), coeff)) {
        fail("unknown coefficient fixture '" + coeff + "'");
    }
    if (!known(rhs_names(), rhs)) {
        fail("unknown right-hand side fixture '" + rhs + "'");
    }
    if (!known(scalar_names(), scalar)) {
        fail("unknown scalar fixture '" + scalar + "'");
    }
    if (coeff == "grid" && coeff_file.empty()) {
        fail("coefficient 'grid' needs coeff_file");
    }
    if (kind == StudyKind::bmo_diagnostics) {
        if (depth < 0 || depth > 8) {
            fail("depth must lie in [0, 8]");
        }
        if (jn_depth < 1 || jn_depth > 12) {
            fail("jn_depth must lie in [1, 12]");
        }
        if (level_max > 10) {
            fail("bmo diagnostics support levels up to 10");
        }
        if (grid_points < 2) {
            fail("grid_points must be at least 2");
        }
        for (double l : lambdas) {
            if (!(l > 0.0)) {
                fail("lambdas must be positive");
            }
        }
    }
}

namespace {

json to_json(const ExperimentConfig& c) {
    return json{{"kind", to_string(c.kind)},
                {"coeff", c.coeff},
                {"beta", c.beta},
                {"kappa", c.kappa},
                {"x0", c.x0},
                {"coeff_file", c.coeff_file},
                {"rhs", c.rhs},
                {"p", c.p},
                {"p_hat", c.p_hat},
                {"levels", std::to_string(c.level_min) + ".." + std::to_string(c.level_max)},
                {"ref_level", c.ref_level},
                {"r", c.r},
                {"quad_tol", c.quad_tol},
                {"solver_tol", c.solver_tol},
                {"seed", c.seed},
                {"workers", c.workers},
                {"samples", c.samples},
                {"scalar", c.scalar},
                {"depth", c.depth},
                {"lambdas", c.lambdas},
                {"jn_depth", c.jn_depth},
                {"grid_points", c.grid_points},
                {"out", c.out}};
}

template <class T>
void read(const json& j, const char* key, T& target) {
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    ExperimentConfig c;
    const json known = to_json(c);
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (j.contains("kind")) {
        std::string kind;
        read(j, "kind", kind);
        c.kind = parse_study_kind(kind);
    }
    if (j.contains("levels")) {
        const json& lv = j.at("levels");
        if (lv.is_string()) {
            std::tie(c.level_min, c.level_max) = parse_level_range(lv.get<std::string>());
        } else if (lv.is_array() && lv.size() == 2 && lv[0].is_number_integer() &&
                   lv[1].is_number_integer()) {
            c.level_min = lv[0].get<int>();
            c.level_max = lv[1].get<int>();
        } else {
            throw ConfigError("levels must be \"a..b\" or [a, b]");
        }
    }
    auto opt = [&](const char* key, auto& target) {
        if (j.contains(key)) {
            read(j, key, target);
        }
    };
    opt("coeff", c.coeff);
    opt("beta", c.beta);
    opt("kappa", c.kappa);
    opt("x0", c.x0);
    opt("coeff_file", c.coeff_file);
    opt("rhs", c.rhs);
    opt("p", c.p);
    opt("p_hat", c.p_hat);
    opt("ref_level", c.ref_level);
    opt("r", c.r);
    opt("quad_tol", c.quad_tol);
    opt("solver_tol", c.solver_tol);
    opt("seed", c.seed);
    opt("workers", c.workers);
    opt("samples", c.samples);
    opt("scalar", c.scalar);
    opt("depth", c.depth);
    opt("lambdas", c.lambdas);
    opt("jn_depth", c.jn_depth);
    opt("grid_points", c.grid_points);
    opt("out", c.out);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig& config) { return to_json(config).dump(2); }

}  // namespace bmofem::harness
