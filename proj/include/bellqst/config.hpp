#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "bellqst/states.hpp"

namespace bellqst {

/// One sweep of the tomography experiment over a grid of sigma values.
struct Scenario {
    FamilyTag family_tag = FamilyTag::Phi;
    int sample_size = 20;
    std::vector<double> sigma_grid;
    double p = 0.0;
    double n_mean = 1000.0;
    bool poisson_enabled = true;
    std::uint64_t master_seed = 0;
    std::string scenario_id;

    void validate() const;
};

/// Analyzer-angle scan with one arm fixed at H.
struct ScanSpec {
    std::vector<double> theta_grid;
    int repetitions = 50;
    double sigma = 0.0;
    double p = 0.0;
    double n_mean = 1000.0;
    bool poisson_enabled = true;
    std::uint64_t master_seed = 0;
    std::string scan_id;
    BellFamily state{};

    void validate() const;
};

inline constexpr int kDeskSampleSize = 20;
inline constexpr int kFullSampleSize = 200;

/// 25 points from pi/50 to pi/2 inclusive.
std::vector<double> default_sigma_grid();
/// 60 points 2 pi j / 60.
std::vector<double> default_theta_grid();

/// `count` points from start to stop inclusive (count == 1 yields {start}).
std::vector<double> linspace(double start, double stop, int count);

/// Grid syntax: comma-separated reals, "linspace:start:stop:count", or "periodic:count"
/// (2 pi j / count for j < count).
std::vector<double> parse_grid(const std::string& text);

struct ConfigSection {
    std::string name;
    std::map<std::string, std::string> values;
    int line = 0;
};

/// Parses "[name]" headers followed by "key = value" lines; '#' starts a comment.
/// Keys before the first header form an unnamed section.
std::vector<ConfigSection> parse_sections(std::istream& in);

/// Keys: family, sample_size, sigma_grid, p, n_mean, poisson, seed, id. The id defaults to
/// the section name. Unknown keys are rejected.
std::vector<Scenario> parse_scenarios(std::istream& in);
std::vector<Scenario> load_scenarios(const std::string& path);

/// Keys: family, phase, theta_grid, repetitions, sigma, p, n_mean, poisson, seed, id.
std::vector<ScanSpec> parse_scan_specs(std::istream& in);
std::vector<ScanSpec> load_scan_specs(const std::string& path);

}  // namespace bellqst
