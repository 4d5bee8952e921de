#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "curvebody/dynamics.hpp"

namespace curvebody {

// Validated simulation setup parsed from a flat key = value document.
struct SimConfig {
    Space space = Space::Sphere;
    double m1 = 1.0;
    double m2 = 1.0;
    Vec3 q1{};
    Vec3 q2{};
    Vec3 q1dot{};
    Vec3 q2dot{};
    PotentialSpec potential = PotentialSpec::free();
    double dt = 1e-3;
    long steps = 1;
    long output_every = 1;
    std::uint64_t seed = 0;

    PhaseState initial_state() const { return {q1, q2, q1dot, q2dot, space}; }
};

namespace detail {

struct ConfigValue {
    enum class Kind { Number, String, Triple } kind = Kind::Number;
    double num = 0.0;
    std::string str;
    Vec3 triple{};
    int line = 0;
};

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& tok, int line) {
    const std::string t = trim(tok);
    if (t.empty()) throw ParseError(line, "empty numeric value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ParseError(line, "malformed number '" + t + "'");
    return v;
}

inline ConfigValue parse_value(const std::string& raw, int line) {
    ConfigValue v;
    v.line = line;
    const std::string t = trim(raw);
    if (t.empty()) throw ParseError(line, "missing value");
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"')
            throw ParseError(line, "unterminated string");
        v.kind = ConfigValue::Kind::String;
        v.str = t.substr(1, t.size() - 2);
        if (v.str.find('"') != std::string::npos)
            throw ParseError(line, "unexpected quote inside string");
        return v;
    }
    if (t.front() == '[') {
        if (t.back() != ']') throw ParseError(line, "unterminated array");
        std::string body = t.substr(1, t.size() - 2);
        std::vector<double> xs;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = body.find(',', pos);
            const std::string piece =
                comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
            xs.push_back(parse_number(piece, line));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (xs.size() != 3) throw ParseError(line, "array must have exactly 3 entries");
        v.kind = ConfigValue::Kind::Triple;
        v.triple = {xs[0], xs[1], xs[2]};
        return v;
    }
    v.kind = ConfigValue::Kind::Number;
    v.num = parse_number(t, line);
    return v;
}

// Strips a trailing comment, respecting quoted strings.
inline std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "space", "m1",        "m2",    "q1",    "q2",           "q1dot", "q2dot",
        "potential", "alpha", "omega", "dt",    "steps",        "output_every", "seed"};
    return keys;
}

}  // namespace detail

// Parses and validates a flat TOML-style document:
//   key = value, values being numbers, "strings", or [x, y, z] triples;
//   '#' starts a comment; unknown and duplicate keys are rejected.
inline SimConfig parse_sim_config(const std::string& text) {
    using detail::ConfigValue;
    std::map<std::string, ConfigValue> kv;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string raw =
            nl == std::string::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++line_no;
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;

        const std::string stripped = detail::trim(detail::strip_comment(raw));
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected 'key = value'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        if (key.empty()) throw ParseError(line_no, "empty key");
        for (char c : key)
            if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_'))
                throw ParseError(line_no, "invalid key character in '" + key + "'");
        if (!detail::known_keys().count(key)) throw UnknownKey(key);
        if (kv.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
        kv.emplace(key, detail::parse_value(stripped.substr(eq + 1), line_no));
    }

    auto require = [&](const std::string& key) -> const ConfigValue& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ValidationError(key, "missing required key");
        return it->second;
    };
    auto as_number = [&](const std::string& key, const ConfigValue& v) {
        if (v.kind != ConfigValue::Kind::Number)
            throw ValidationError(key, "expected a number");
        if (!std::isfinite(v.num)) throw ValidationError(key, "must be finite");
        return v.num;
    };
    auto as_string = [&](const std::string& key, const ConfigValue& v) {
        if (v.kind != ConfigValue::Kind::String)
            throw ValidationError(key, "expected a quoted string");
        return v.str;
    };
    auto as_triple = [&](const std::string& key, const ConfigValue& v) {
        if (v.kind != ConfigValue::Kind::Triple)
            throw ValidationError(key, "expected [x, y, z]");
        if (!std::isfinite(v.triple.x) || !std::isfinite(v.triple.y) ||
            !std::isfinite(v.triple.z))
            throw ValidationError(key, "components must be finite");
        return v.triple;
    };
    auto as_integer = [&](const std::string& key, const ConfigValue& v, long lo) {
        const double d = as_number(key, v);
        const long n = static_cast<long>(d);
        if (static_cast<double>(n) != d)
            throw ValidationError(key, "expected an integer");
        if (n < lo)
            throw ValidationError(key, "must be at least " + std::to_string(lo));
        return n;
    };

    SimConfig cfg;
    const std::string space = as_string("space", require("space"));
    if (space == "sphere") cfg.space = Space::Sphere;
    else if (space == "hyperbolic") cfg.space = Space::Hyperbolic;
    else throw ValidationError("space", "must be \"sphere\" or \"hyperbolic\"");

    cfg.m1 = as_number("m1", require("m1"));
    cfg.m2 = as_number("m2", require("m2"));
    if (!(cfg.m1 > 0.0)) throw ValidationError("m1", "must be positive");
    if (!(cfg.m2 > 0.0)) throw ValidationError("m2", "must be positive");

    cfg.q1 = as_triple("q1", require("q1"));
    cfg.q2 = as_triple("q2", require("q2"));
    cfg.q1dot = as_triple("q1dot", require("q1dot"));
    cfg.q2dot = as_triple("q2dot", require("q2dot"));
    if (ChartPoint{cfg.q1, cfg.space}.lambda() <= 0.0)
        throw ValidationError("q1", "outside the chart domain");
    if (ChartPoint{cfg.q2, cfg.space}.lambda() <= 0.0)
        throw ValidationError("q2", "outside the chart domain");

    cfg.dt = as_number("dt", require("dt"));
    if (!(cfg.dt > 0.0)) throw ValidationError("dt", "must be positive");
    cfg.steps = as_integer("steps", require("steps"), 1);

    if (kv.count("output_every"))
        cfg.output_every = as_integer("output_every", kv.at("output_every"), 1);
    if (kv.count("seed")) {
        const long s = as_integer("seed", kv.at("seed"), 0);
        cfg.seed = static_cast<std::uint64_t>(s);
    }

    std::string kind = "free";
    if (kv.count("potential")) kind = as_string("potential", kv.at("potential"));
    double alpha = 1.0, omega = 1.0;
    if (kv.count("alpha")) alpha = as_number("alpha", kv.at("alpha"));
    if (kv.count("omega")) omega = as_number("omega", kv.at("omega"));
    if (kind == "free") cfg.potential = PotentialSpec::free();
    else if (kind == "coulomb") cfg.potential = PotentialSpec::coulomb(alpha);
    else if (kind == "oscillator") cfg.potential = PotentialSpec::oscillator(omega);
    else
        throw ValidationError("potential",
                              "must be \"free\", \"coulomb\" or \"oscillator\"");
    return cfg;
}

}  // namespace curvebody
