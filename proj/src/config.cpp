#include "coglab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coglab::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            fail(origin, line, key + ": trailing characters in number '" + value + "'");
        }
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(origin, line, key + ": expected a number, got '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& origin, int line, const std::string& key,
                       const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) {
            fail(origin, line, key + ": trailing characters in integer '" + value + "'");
        }
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(origin, line, key + ": expected an integer, got '" + value + "'");
    }
}

std::uint64_t parse_uint(const std::string& origin, int line, const std::string& key,
                         const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) {
            fail(origin, line, key + ": trailing characters in integer '" + value + "'");
        }
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(origin, line, key + ": expected a nonnegative integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    fail(origin, line, key + ": expected true/false, got '" + value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

agents::RegimeKind parse_regime_name(const std::string& origin, int line,
                                     const std::string& value) {
    if (value == "full_delegation") {
        return agents::RegimeKind::FullDelegation;
    }
    if (value == "minimal_ai") {
        return agents::RegimeKind::MinimalAI;
    }
    if (value == "mixed") {
        return agents::RegimeKind::Mixed;
    }
    fail(origin, line, "regime.name: expected full_delegation|minimal_ai|mixed, got '" + value + "'");
}

void apply_key(Resolved& r, const std::string& origin, int line, const std::string& section,
               const std::string& key, const std::string& value) {
    auto& sim = r.sim;
    if (section == "environment") {
        auto& e = sim.environment;
        if (key == "k") {
            const auto k = parse_int(origin, line, key, value);
            if (k < 3) {
                fail(origin, line, "environment.k: need at least 3 skill dimensions");
            }
            // Rebuild the derived family structure; keep user-set fields.
            const env::EnvSpec fresh = env::make_env(static_cast<int>(k));
            e.k = fresh.k;
            e.families = fresh.families;
        } else if (key == "family_weights") {
            const auto parts = split(value, ',');
            if (parts.size() != 4) {
                fail(origin, line, "environment.family_weights: expected 4 comma-separated values");
            }
            for (std::size_t i = 0; i < 4; ++i) {
                e.family_weights[i] = parse_double(origin, line, key, parts[i]);
            }
        } else if (key == "requirement_lo") {
            e.requirement_lo = parse_double(origin, line, key, value);
        } else if (key == "requirement_hi") {
            e.requirement_hi = parse_double(origin, line, key, value);
        } else if (key == "difficulty_jitter") {
            e.difficulty_jitter = parse_double(origin, line, key, value);
        } else if (key == "epsilon_max") {
            e.epsilon_max = parse_double(origin, line, key, value);
        } else if (key == "lambda_m") {
            e.lambda_m = parse_double(origin, line, key, value);
        } else if (key == "lambda_c") {
            e.lambda_c = parse_double(origin, line, key, value);
        } else {
            fail(origin, line, "unknown key environment." + key);
        }
    } else if (section == "dynamics") {
        auto& d = sim.dynamics;
        if (key == "alpha_self") {
            d.alpha_self = parse_double(origin, line, key, value);
        } else if (key == "alpha_ai") {
            d.alpha_ai = parse_double(origin, line, key, value);
        } else if (key == "delta") {
            d.delta = parse_double(origin, line, key, value);
        } else if (key == "sensitivity") {
            d.sensitivity = parse_double(origin, line, key, value);
        } else if (key == "w_effort") {
            d.w_effort = parse_double(origin, line, key, value);
        } else if (key == "eta_dep") {
            d.eta_dep = parse_double(origin, line, key, value);
        } else if (key == "kappa_dep") {
            d.kappa_dep = parse_double(origin, line, key, value);
        } else if (key == "gamma_diff") {
            d.gamma_diff = parse_double(origin, line, key, value);
        } else if (key == "q_a") {
            d.q_a = parse_double(origin, line, key, value);
        } else if (key == "atrophy_global") {
            d.atrophy_global = parse_bool(origin, line, key, value);
        } else {
            fail(origin, line, "unknown key dynamics." + key);
        }
    } else if (section == "regime") {
        if (key == "name") {
            sim.regime = agents::make_regime(parse_regime_name(origin, line, value));
        } else {
            fail(origin, line, "unknown key regime." + key);
        }
    } else if (section == "engine") {
        if (key == "n_agents") {
            sim.n_agents = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "phase1_ticks") {
            sim.phase_ticks[0] = parse_int(origin, line, key, value);
        } else if (key == "phase2_ticks") {
            sim.phase_ticks[1] = parse_int(origin, line, key, value);
        } else if (key == "phase3_ticks") {
            sim.phase_ticks[2] = parse_int(origin, line, key, value);
        } else if (key == "eval_interval") {
            sim.eval_interval = parse_int(origin, line, key, value);
        } else if (key == "eval_tasks") {
            sim.eval_tasks = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "probe_tasks") {
            sim.probe_tasks = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "final_window_fraction") {
            sim.final_window_fraction = parse_double(origin, line, key, value);
        } else if (key == "seed") {
            sim.seed = parse_uint(origin, line, key, value);
        } else {
            fail(origin, line, "unknown key engine." + key);
        }
    } else if (section == "sweep") {
        if (key == "n_seeds") {
            r.lab.sweep_seeds = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "regimes") {
            r.lab.sweep_regimes.clear();
            for (const auto& name : split(value, ',')) {
                r.lab.sweep_regimes.push_back(parse_regime_name(origin, line, name));
            }
        } else if (key == "configs") {
            r.lab.sweep_configs.clear();
            for (const auto& item : split(value, ',')) {
                if (item == "P0") {
                    r.lab.sweep_configs.push_back({"P0", 0.2, 0.004});
                } else if (item == "P1") {
                    r.lab.sweep_configs.push_back({"P1", 0.6, 0.003});
                } else if (item == "P2") {
                    r.lab.sweep_configs.push_back({"P2", 0.4, 0.002});
                } else {
                    const auto parts = split(item, ':');
                    if (parts.size() != 3) {
                        fail(origin, line,
                             "sweep.configs: expected P0|P1|P2 or label:sigma:delta, got '" +
                                 item + "'");
                    }
                    r.lab.sweep_configs.push_back(
                        {parts[0], parse_double(origin, line, key, parts[1]),
                         parse_double(origin, line, key, parts[2])});
                }
            }
        } else {
            fail(origin, line, "unknown key sweep." + key);
        }
    } else if (section == "optimize") {
        if (key == "n_seeds") {
            r.lab.opt_seeds = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "delta_grid") {
            r.lab.delta_grid.clear();
            for (const auto& item : split(value, ',')) {
                r.lab.delta_grid.push_back(parse_double(origin, line, key, item));
            }
        } else {
            fail(origin, line, "unknown key optimize." + key);
        }
    } else {
        fail(origin, line, "unknown section [" + section + "]");
    }
}

void validate(const Resolved& r, const std::string& origin) {
    try {
        r.sim.validate();
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (r.lab.sweep_seeds <= 0 || r.lab.opt_seeds <= 0) {
        throw ConfigError(origin + ": sweep.n_seeds/optimize.n_seeds: must be positive");
    }
    if (r.lab.sweep_regimes.empty() || r.lab.sweep_configs.empty()) {
        throw ConfigError(origin + ": sweep.regimes/sweep.configs: must be nonempty");
    }
    if (r.lab.delta_grid.empty()) {
        throw ConfigError(origin + ": optimize.delta_grid: must be nonempty");
    }
    for (double d : r.lab.delta_grid) {
        if (d < 0.0) {
            throw ConfigError(origin + ": optimize.delta_grid: entries must be >= 0");
        }
    }
}

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Resolved defaults() {
    Resolved r;
    r.sim.environment = env::make_env(6);
    return r;
}

Resolved parse_text(const std::string& text, const std::string& origin) {
    Resolved r = defaults();
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(origin, line_no, "malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                fail(origin, line_no, "empty section name");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(origin, line_no, "expected key = value, got '" + line + "'");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            fail(origin, line_no, "empty key");
        }
        std::string key_section = section;
        const auto dot = key.find('.');
        if (dot != std::string::npos) {
            key_section = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        if (key_section.empty()) {
            fail(origin, line_no, "key '" + key + "' outside any section");
        }
        apply_key(r, origin, line_no, key_section, key, value);
    }
    validate(r, origin);
    return r;
}

Resolved parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open configuration file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

void apply_fast(Resolved& resolved) {
    for (auto& ticks : resolved.sim.phase_ticks) {
        ticks = std::max<std::int64_t>(1, ticks / 2);
    }
    // Keep at least two evaluation windows inside phase 2.
    resolved.sim.phase_ticks[1] =
        std::max(resolved.sim.phase_ticks[1], 2 * resolved.sim.eval_interval);
    resolved.lab.sweep_seeds = std::min(resolved.lab.sweep_seeds, 5);
    resolved.lab.opt_seeds = std::min(resolved.lab.opt_seeds, 5);
}

std::string render(const Resolved& r) {
    std::ostringstream out;
    const auto& e = r.sim.environment;
    const auto& d = r.sim.dynamics;

    out << "[environment]\n";
    out << "k = " << e.k << "\n";
    out << "family_weights = " << fmt_double(e.family_weights[0]) << ", "
        << fmt_double(e.family_weights[1]) << ", " << fmt_double(e.family_weights[2]) << ", "
        << fmt_double(e.family_weights[3]) << "\n";
    out << "requirement_lo = " << fmt_double(e.requirement_lo) << "\n";
    out << "requirement_hi = " << fmt_double(e.requirement_hi) << "\n";
    out << "difficulty_jitter = " << fmt_double(e.difficulty_jitter) << "\n";
    out << "epsilon_max = " << fmt_double(e.epsilon_max) << "\n";
    out << "lambda_m = " << fmt_double(e.lambda_m) << "\n";
    out << "lambda_c = " << fmt_double(e.lambda_c) << "\n";

    out << "\n[dynamics]\n";
    out << "alpha_self = " << fmt_double(d.alpha_self) << "\n";
    out << "alpha_ai = " << fmt_double(d.alpha_ai) << "\n";
    out << "delta = " << fmt_double(d.delta) << "\n";
    out << "sensitivity = " << fmt_double(d.sensitivity) << "\n";
    out << "w_effort = " << fmt_double(d.w_effort) << "\n";
    out << "eta_dep = " << fmt_double(d.eta_dep) << "\n";
    out << "kappa_dep = " << fmt_double(d.kappa_dep) << "\n";
    out << "gamma_diff = " << fmt_double(d.gamma_diff) << "\n";
    out << "q_a = " << fmt_double(d.q_a) << "\n";
    out << "atrophy_global = " << (d.atrophy_global ? "true" : "false") << "\n";

    out << "\n[regime]\n";
    out << "name = " << agents::to_string(r.sim.regime.kind) << "\n";

    out << "\n[engine]\n";
    out << "n_agents = " << r.sim.n_agents << "\n";
    out << "phase1_ticks = " << r.sim.phase_ticks[0] << "\n";
    out << "phase2_ticks = " << r.sim.phase_ticks[1] << "\n";
    out << "phase3_ticks = " << r.sim.phase_ticks[2] << "\n";
    out << "eval_interval = " << r.sim.eval_interval << "\n";
    out << "eval_tasks = " << r.sim.eval_tasks << "\n";
    out << "probe_tasks = " << r.sim.probe_tasks << "\n";
    out << "final_window_fraction = " << fmt_double(r.sim.final_window_fraction) << "\n";
    out << "seed = " << r.sim.seed << "\n";

    out << "\n[sweep]\n";
    out << "n_seeds = " << r.lab.sweep_seeds << "\n";
    out << "regimes = ";
    for (std::size_t i = 0; i < r.lab.sweep_regimes.size(); ++i) {
        out << (i ? ", " : "") << agents::to_string(r.lab.sweep_regimes[i]);
    }
    out << "\n";
    out << "configs = ";
    for (std::size_t i = 0; i < r.lab.sweep_configs.size(); ++i) {
        const auto& pc = r.lab.sweep_configs[i];
        out << (i ? ", " : "") << pc.label << ":" << fmt_double(pc.sensitivity) << ":"
            << fmt_double(pc.delta);
    }
    out << "\n";

    out << "\n[optimize]\n";
    out << "n_seeds = " << r.lab.opt_seeds << "\n";
    out << "delta_grid = ";
    for (std::size_t i = 0; i < r.lab.delta_grid.size(); ++i) {
        out << (i ? ", " : "") << fmt_double(r.lab.delta_grid[i]);
    }
    out << "\n";
    return out.str();
}

lab::SweepSpec sweep_spec(const Resolved& resolved) {
    lab::SweepSpec spec;
    spec.base = resolved.sim;
    for (auto kind : resolved.lab.sweep_regimes) {
        spec.regimes.push_back(agents::make_regime(kind));
    }
    spec.configs = resolved.lab.sweep_configs;
    spec.seeds = lab::replicate_seeds(resolved.sim.seed, resolved.lab.sweep_seeds);
    return spec;
}

lab::OptSpec opt_spec(const Resolved& resolved) {
    lab::OptSpec spec;
    spec.base = resolved.sim;
    spec.base.regime = agents::make_regime(agents::RegimeKind::Mixed);
    spec.delta_grid = resolved.lab.delta_grid;
    spec.seeds = lab::replicate_seeds(resolved.sim.seed, resolved.lab.opt_seeds);
    return spec;
}

} // namespace coglab::config
