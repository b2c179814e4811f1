#include "bellqst/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bellqst {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": cannot parse '" + text + "' as a real number");
    }
    if (used != t.size()) {
        throw std::invalid_argument(what + ": trailing characters in '" + text + "'");
    }
    return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": cannot parse '" + text + "' as an integer");
    }
    if (used != t.size()) {
        throw std::invalid_argument(what + ": trailing characters in '" + text + "'");
    }
    return v;
}

std::uint64_t parse_seed(const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(t, &used, 0);
    } catch (const std::exception&) {
        throw std::invalid_argument("seed: cannot parse '" + text + "'");
    }
    if (used != t.size() || t.starts_with('-')) {
        throw std::invalid_argument("seed: invalid value '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "1" || t == "true" || t == "on" || t == "yes") return true;
    if (t == "0" || t == "false" || t == "off" || t == "no") return false;
    throw std::invalid_argument(what + ": expected a boolean, got '" + text + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

void reject_unknown(const ConfigSection& sec, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : sec.values) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* a) { return key == a; });
        if (!known) {
            throw std::invalid_argument("section [" + sec.name + "]: unknown key '" + key + "'");
        }
    }
}

template <class Fn>
void with_key(const ConfigSection& sec, const char* key, Fn&& fn) {
    if (auto it = sec.values.find(key); it != sec.values.end()) {
        try {
            fn(it->second);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("section [" + sec.name + "] key '" + key + "': " + e.what());
        }
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return in;
}

}  // namespace

void Scenario::validate() const {
    if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
    if (sigma_grid.empty()) throw std::invalid_argument("sigma_grid must not be empty");
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        const double s = sigma_grid[i];
        if (!(s >= 0.0 && s <= std::numbers::pi / 2 + 1e-12)) {
            throw std::invalid_argument("sigma_grid values must lie in [0, pi/2]");
        }
        if (i > 0 && !(s > sigma_grid[i - 1])) {
            throw std::invalid_argument("sigma_grid must be strictly ascending");
        }
    }
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (!(n_mean > 0.0)) throw std::invalid_argument("n_mean must be > 0");
    if (scenario_id.empty()) throw std::invalid_argument("scenario id must not be empty");
    if (scenario_id.find_first_of(",\"\n") != std::string::npos) {
        throw std::invalid_argument("scenario id must not contain commas, quotes or newlines");
    }
}

void ScanSpec::validate() const {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (theta_grid.empty()) throw std::invalid_argument("theta_grid must not be empty");
    for (double t : theta_grid) {
        if (!(t >= 0.0 && t < 2.0 * std::numbers::pi)) {
            throw std::invalid_argument("theta_grid values must lie in [0, 2pi)");
        }
    }
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (!(n_mean > 0.0)) throw std::invalid_argument("n_mean must be > 0");
    if (scan_id.empty()) throw std::invalid_argument("scan id must not be empty");
}

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) return {start};
    for (int i = 0; i < count; ++i) {
        out.push_back(i == count - 1 ? stop : start + (stop - start) * i / (count - 1));
    }
    return out;
}

std::vector<double> default_sigma_grid() {
    return linspace(std::numbers::pi / 50, std::numbers::pi / 2, 25);
}

std::vector<double> default_theta_grid() { return parse_grid("periodic:60"); }

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.starts_with("linspace:")) {
        const auto parts = split(t.substr(9), ':');
        if (parts.size() != 3) {
            throw std::invalid_argument("linspace grid must be linspace:start:stop:count");
        }
        const long long count = parse_integer(parts[2], "linspace count");
        if (count < 1 || count > 1000000) {
            throw std::invalid_argument("linspace count out of range");
        }
        return linspace(parse_real(parts[0], "linspace start"),
                        parse_real(parts[1], "linspace stop"), static_cast<int>(count));
    }
    if (t.starts_with("periodic:")) {
        const long long count = parse_integer(t.substr(9), "periodic count");
        if (count < 1 || count > 1000000) {
            throw std::invalid_argument("periodic count out of range");
        }
        std::vector<double> out;
        for (long long j = 0; j < count; ++j) {
            out.push_back(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count));
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(t, ',')) out.push_back(parse_real(item, "grid value"));
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

std::vector<ConfigSection> parse_sections(std::istream& in) {
    std::vector<ConfigSection> sections;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": malformed section header");
            }
            sections.push_back({trim(line.substr(1, line.size() - 2)), {}, line_no});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
        }
        if (sections.empty()) sections.push_back({"", {}, line_no});
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": empty key");
        }
        auto& values = sections.back().values;
        if (values.contains(key)) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate key '" +
                                        key + "'");
        }
        values[key] = trim(line.substr(eq + 1));
    }
    return sections;
}

std::vector<Scenario> parse_scenarios(std::istream& in) {
    std::vector<Scenario> out;
    for (const ConfigSection& sec : parse_sections(in)) {
        reject_unknown(sec, {"family", "sample_size", "sigma_grid", "p", "n_mean", "poisson",
                             "seed", "id"});
        Scenario s;
        s.sample_size = kDeskSampleSize;
        s.sigma_grid = default_sigma_grid();
        s.scenario_id = sec.name;
        with_key(sec, "family", [&](const std::string& v) { s.family_tag = parse_family(trim(v)); });
        with_key(sec, "sample_size", [&](const std::string& v) {
            s.sample_size = static_cast<int>(parse_integer(v, "sample_size"));
        });
        with_key(sec, "sigma_grid", [&](const std::string& v) { s.sigma_grid = parse_grid(v); });
        with_key(sec, "p", [&](const std::string& v) { s.p = parse_real(v, "p"); });
        with_key(sec, "n_mean", [&](const std::string& v) { s.n_mean = parse_real(v, "n_mean"); });
        with_key(sec, "poisson", [&](const std::string& v) { s.poisson_enabled = parse_bool(v, "poisson"); });
        with_key(sec, "seed", [&](const std::string& v) { s.master_seed = parse_seed(v); });
        with_key(sec, "id", [&](const std::string& v) { s.scenario_id = trim(v); });
        try {
            s.validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("section [" + sec.name + "]: " + e.what());
        }
        out.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (out[i].scenario_id == out[j].scenario_id) {
                throw std::invalid_argument("duplicate scenario id '" + out[i].scenario_id + "'");
            }
    if (out.empty()) throw std::invalid_argument("config contains no scenarios");
    return out;
}

std::vector<Scenario> load_scenarios(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_scenarios(in);
}

std::vector<ScanSpec> parse_scan_specs(std::istream& in) {
    std::vector<ScanSpec> out;
    for (const ConfigSection& sec : parse_sections(in)) {
        reject_unknown(sec, {"family", "phase", "theta_grid", "repetitions", "sigma", "p",
                             "n_mean", "poisson", "seed", "id"});
        ScanSpec s;
        s.theta_grid = default_theta_grid();
        s.scan_id = sec.name;
        with_key(sec, "family", [&](const std::string& v) { s.state.tag = parse_family(trim(v)); });
        with_key(sec, "phase", [&](const std::string& v) { s.state.phase = parse_real(v, "phase"); });
        with_key(sec, "theta_grid", [&](const std::string& v) { s.theta_grid = parse_grid(v); });
        with_key(sec, "repetitions", [&](const std::string& v) {
            s.repetitions = static_cast<int>(parse_integer(v, "repetitions"));
        });
        with_key(sec, "sigma", [&](const std::string& v) { s.sigma = parse_real(v, "sigma"); });
        with_key(sec, "p", [&](const std::string& v) { s.p = parse_real(v, "p"); });
        with_key(sec, "n_mean", [&](const std::string& v) { s.n_mean = parse_real(v, "n_mean"); });
        with_key(sec, "poisson", [&](const std::string& v) { s.poisson_enabled = parse_bool(v, "poisson"); });
        with_key(sec, "seed", [&](const std::string& v) { s.master_seed = parse_seed(v); });
        with_key(sec, "id", [&](const std::string& v) { s.scan_id = trim(v); });
        try {
            s.validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("section [" + sec.name + "]: " + e.what());
        }
        out.push_back(std::move(s));
    }
    if (out.empty()) throw std::invalid_argument("config contains no scans");
    return out;
}

std::vector<ScanSpec> load_scan_specs(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_scan_specs(in);
}

}  // namespace bellqst
