// bellqst: command-line driver for the tomography sweeps.
//
//   bellqst sweep <config> --out <dir>
//   bellqst scan <config> --out <dir>
//   bellqst reconstruct --counts <csv> --n-mean <real> --out <file>
//   bellqst simulate --family phi --phase 0 --sigma 0.1 --p 0 --n-mean 1000 --seed 1
//
// Global flags: --threads <int>, --full-scale (200 states per sigma instead of 20).

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "bellqst/csv.hpp"
#include "bellqst/harness.hpp"
#include "bellqst/noise.hpp"
#include "bellqst/polarimetry.hpp"
#include "bellqst/rng.hpp"

namespace fs = std::filesystem;
using namespace bellqst;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void prepare_dir(const fs::path& dir) {
    fs::create_directories(dir);
    if (!fs::is_directory(dir)) throw std::runtime_error("'" + dir.string() + "' is not a directory");
}

int cmd_sweep(const std::string& config, const fs::path& dir, int threads, bool full_scale) {
    std::vector<Scenario> scenarios = load_scenarios(config);
    if (full_scale)
        for (Scenario& s : scenarios) s.sample_size = kFullSampleSize;
    prepare_dir(dir);

    RunOptions opts;
    opts.threads = threads;
    std::vector<RunResult> results;
    for (const Scenario& s : scenarios) {
        std::cerr << "sweep " << s.scenario_id << ": " << s.sigma_grid.size() << " sigma x "
                  << s.sample_size << " states\n";
        results.push_back(run_sweep(s, opts));
        std::cout << s.scenario_id << " chsh_region:";
        for (double sigma : chsh_violation_region(results.back())) std::cout << ' ' << format_real(sigma);
        std::cout << '\n';
    }

    auto per_state = open_out(dir / "per_state.csv");
    write_per_state_csv(per_state, results);
    auto per_sigma = open_out(dir / "per_sigma.csv");
    write_per_sigma_csv(per_sigma, results);

    if (results.size() > 1) {
        try {
            const ComparisonTable table = compare_results(results);
            auto cmp = open_out(dir / "comparison.csv");
            write_comparison_csv(cmp, table);
        } catch (const std::invalid_argument&) {
            std::cerr << "scenarios use different sigma grids; comparison.csv not written\n";
        }
    }
    return 0;
}

int cmd_scan(const std::string& config, const fs::path& dir) {
    const std::vector<ScanSpec> specs = load_scan_specs(config);
    prepare_dir(dir);
    for (const ScanSpec& spec : specs) {
        const DensityMatrix state = pure_density(bell_state(spec.state));
        auto out = open_out(dir / ("scan_" + spec.scan_id + ".csv"));
        write_scan_csv(out, run_scan(spec, state));
    }
    return 0;
}

int cmd_reconstruct(const std::string& counts_path, double n_mean, const fs::path& out_path,
                    int threads) {
    std::ifstream in(counts_path);
    if (!in) throw std::runtime_error("cannot open '" + counts_path + "'");
    const std::vector<CountsRow> rows = read_counts_csv(in);
    const MeasurementSet mset = build_measurement_set();

    std::vector<std::optional<MleReport>> reports(rows.size());
    std::vector<std::jthread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    for (int w = 0; w < std::max(threads, 1); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < rows.size(); i = next++) {
                try {
                    reports[i] = reconstruct(rows[i].counts, mset, n_mean);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);

    auto out = open_out(out_path);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << "# scenario_id=" << rows[i].scenario_id << " state_index=" << rows[i].state_index
            << " converged=" << (reports[i]->converged ? 1 : 0) << '\n';
        write_density_matrix(out, reports[i]->rho.mat(), reports[i]->final_objective);
    }
    return 0;
}

int cmd_simulate(const std::string& family, double phase, const NoiseConfig& cfg,
                 const std::string& out_path) {
    cfg.validate();
    const DensityMatrix rho = pure_density(bell_state({parse_family(family), phase}));
    const RngStream rng = RngStream(cfg.master_seed).child("simulate").child_for_value(cfg.sigma);
    const std::vector<CountsRow> rows = {
        {"simulate", 0, simulate_counts(rho, build_measurement_set(), cfg, rng)}};
    if (out_path.empty()) {
        write_counts_csv(std::cout, rows);
    } else {
        auto out = open_out(out_path);
        write_counts_csv(out, rows);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon polarization tomography under analyzer noise"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool full_scale = false;
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--full-scale", full_scale, "Use 200 states per sigma");

    std::string config;
    std::string out_dir;
    auto* sweep = app.add_subcommand("sweep", "Run the scenarios of a config file");
    sweep->add_option("config", config, "Scenario config")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_dir, "Output directory")->required();

    auto* scan = app.add_subcommand("scan", "Run analyzer-angle scans");
    scan->add_option("config", config, "Scan config")->required()->check(CLI::ExistingFile);
    scan->add_option("--out", out_dir, "Output directory")->required();

    std::string counts_path;
    std::string out_file;
    double n_mean = 1000.0;
    auto* recon = app.add_subcommand("reconstruct", "Maximum-likelihood density matrices");
    recon->add_option("--counts", counts_path, "Counts CSV")->required()->check(CLI::ExistingFile);
    recon->add_option("--n-mean", n_mean, "Average pairs per measurement")->required();
    recon->add_option("--out", out_file, "Output file")->required();

    std::string family = "phi";
    double phase = 0.0;
    NoiseConfig cfg;
    std::uint64_t seed = 0;
    bool no_poisson = false;
    auto* sim = app.add_subcommand("simulate", "Print the 36 counts for one state");
    sim->add_option("--family", family, "phi or psi")->required();
    sim->add_option("--phase", phase, "Relative phase")->required();
    sim->add_option("--sigma", cfg.sigma, "Rotation-angle std-dev")->required();
    sim->add_option("--p", cfg.p, "Dark count rate")->required();
    sim->add_option("--n-mean", cfg.n_mean, "Average pairs per measurement")->required();
    sim->add_option("--seed", seed, "Master seed")->required();
    sim->add_flag("--no-poisson", no_poisson, "Use exactly n-mean pairs");
    sim->add_option("--out", out_file, "Write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) return cmd_sweep(config, out_dir, threads, full_scale);
        if (*scan) return cmd_scan(config, out_dir);
        if (*recon) return cmd_reconstruct(counts_path, n_mean, out_file, threads);
        if (*sim) {
            cfg.master_seed = seed;
            cfg.poisson_enabled = !no_poisson;
            return cmd_simulate(family, phase, cfg, out_file);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
