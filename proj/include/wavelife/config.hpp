#pragma once

// JSON run configuration. Schema (see README for the full reference):
//   {
//     "p": 2.0, "a": -1.0, "epsilon": 0.3, "R": 1.0,
//     "data": "default_bump" | {"f": [c0, c1, ...], "g": [c0, c1, ...]},
//     "grid": {"h": 0.01, "T": 10.0},
//     "threshold": 1e6, "seed": 0, "solver": "march", "stride": 1
//   }
// Inline data coefficients are polynomials in u = x/R on |x| <= R (zero
// outside) and must vanish to the contract order at the support edge.

#include <wavelife/model.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

namespace wavelife {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ProblemSpec spec;
    double h = 0.0;
    double T = 0.0;
    double threshold = 1e6;
    std::uint64_t seed = 0;
    std::string solver = "march";
    int stride = 1;
    nlohmann::json raw;
};

namespace detail {

inline int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k)
        if (text[k] == '\n') ++line;
    return line;
}

inline double require_number(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("config: missing required key \"" + key + "\"");
    if (!j.at(key).is_number())
        throw ConfigError("config: key \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

inline PolyProfile poly_from_json(const nlohmann::json& arr, double R, const std::string& key) {
    if (!arr.is_array()) throw ConfigError("config: data." + key + " must be an array");
    PolyProfile p;
    p.R = R;
    for (const auto& c : arr) {
        if (!c.is_number())
            throw ConfigError("config: data." + key + " must contain only numbers");
        p.coeffs.push_back(c.get<double>());
    }
    return p;
}

} // namespace detail

inline RunConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: parse error at line " +
                          std::to_string(detail::line_of_byte(text, e.byte)) + ": " + e.what());
    }
    RunConfig c;
    c.raw = j;
    c.spec.p = detail::require_number(j, "p");
    c.spec.a = detail::require_number(j, "a");
    c.spec.epsilon = detail::require_number(j, "epsilon");
    c.spec.R = j.contains("R") ? detail::require_number(j, "R") : 1.0;

    if (!j.contains("grid") || !j.at("grid").is_object())
        throw ConfigError("config: missing required key \"grid\" (object with h and T)");
    c.h = detail::require_number(j.at("grid"), "h");
    c.T = detail::require_number(j.at("grid"), "T");

    if (j.contains("threshold")) c.threshold = detail::require_number(j, "threshold");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned())
            throw ConfigError("config: key \"seed\" must be a nonnegative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("solver")) {
        c.solver = j.at("solver").get<std::string>();
        if (c.solver != "march" && c.solver != "picard" && c.solver != "fdm")
            throw ConfigError("config: solver must be \"march\", \"picard\", or \"fdm\"");
    }
    if (j.contains("stride")) {
        if (!j.at("stride").is_number_integer() || j.at("stride").get<int>() < 1)
            throw ConfigError("config: stride must be a positive integer");
        c.stride = j.at("stride").get<int>();
    }

    const auto& data = j.contains("data") ? j.at("data") : nlohmann::json("default_bump");
    if (data.is_string()) {
        if (data.get<std::string>() != "default_bump")
            throw ConfigError("config: unknown data profile \"" + data.get<std::string>() +
                              "\" (use \"default_bump\" or inline coefficients)");
        c.spec.data = default_bump(c.spec.R);
    } else if (data.is_object()) {
        PolyProfile f = data.contains("f")
                            ? detail::poly_from_json(data.at("f"), c.spec.R, "f")
                            : PolyProfile{c.spec.R, {}};
        if (!data.contains("g")) throw ConfigError("config: inline data needs a \"g\" array");
        PolyProfile g = detail::poly_from_json(data.at("g"), c.spec.R, "g");
        c.spec.data = bump_from_polynomials(f, g);
        if (!check_profile_smoothness(c.spec.data))
            throw ConfigError(
                "config: inline data must vanish at the support edge (f, f', f'', g, g' at "
                "x = ±R) to be admissible");
    } else {
        throw ConfigError("config: \"data\" must be \"default_bump\" or an object");
    }

    try {
        c.spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

} // namespace wavelife
