#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

#include "bellqst/config.hpp"
#include "bellqst/csv.hpp"
#include "bellqst/harness.hpp"
#include "bellqst/metrics.hpp"
#include "bellqst/mle.hpp"
#include "bellqst/noise.hpp"
#include "bellqst/polarimetry.hpp"

namespace py = pybind11;
using namespace bellqst;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

CMat to_cmat(const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1) || (a.shape(0) != 2 && a.shape(0) != 4)) {
        throw py::value_error("expected a 2x2 or 4x4 matrix");
    }
    const int n = static_cast<int>(a.shape(0));
    CMat m(n);
    auto r = a.unchecked<2>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = r(i, j);
    return m;
}

DensityMatrix to_density(const ComplexArray& a) { return DensityMatrix(to_cmat(a)); }

CVec to_cvec(const ComplexArray& a) {
    if (a.ndim() != 1 || (a.shape(0) != 2 && a.shape(0) != 4)) {
        throw py::value_error("expected a vector of length 2 or 4");
    }
    CVec v(static_cast<int>(a.shape(0)));
    auto r = a.unchecked<1>();
    for (int i = 0; i < v.dim(); ++i) v[i] = r(i);
    return v;
}

ComplexArray from_cmat(const CMat& m) {
    ComplexArray out({m.dim(), m.dim()});
    auto w = out.mutable_unchecked<2>();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) w(i, j) = m(i, j);
    return out;
}

ComplexArray from_cvec(const CVec& v) {
    ComplexArray out(v.dim());
    auto w = out.mutable_unchecked<1>();
    for (int i = 0; i < v.dim(); ++i) w(i) = v[i];
    return out;
}

template <std::size_t N>
RealArray from_array(const std::array<double, N>& a) {
    RealArray out(static_cast<py::ssize_t>(N));
    std::copy(a.begin(), a.end(), out.mutable_data());
    return out;
}

std::vector<double> to_vector(const RealArray& a) {
    if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

FamilyTag family_arg(const py::object& o) {
    if (py::isinstance<py::str>(o)) return parse_family(o.cast<std::string>());
    return o.cast<FamilyTag>();
}

const MeasurementSet& mset() {
    static const MeasurementSet m = build_measurement_set();
    return m;
}

template <class Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    fn(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bell-state tomography under analyzer noise";

    py::enum_<FamilyTag>(m, "FamilyTag").value("Phi", FamilyTag::Phi).value("Psi", FamilyTag::Psi);

    m.def("bell_state",
          [](const py::object& family, double phase) { return from_cvec(bell_state({family_arg(family), phase})); },
          py::arg("family"), py::arg("phase") = 0.0);
    m.def("pure_density", [](const ComplexArray& x) { return from_cmat(pure_density(to_cvec(x)).mat()); });
    m.def("with_dark_counts",
          [](const ComplexArray& rho, double p) { return from_cmat(with_dark_counts(to_density(rho), p).mat()); },
          py::arg("rho"), py::arg("p"));
    m.def("phase_sample", [](const py::object& family, int count) {
        std::vector<double> phases;
        for (const BellFamily& f : phase_sample(family_arg(family), count)) phases.push_back(f.phase);
        return phases;
    });

    m.def("measurement_labels", [] {
        return std::vector<std::string>(mset().labels.begin(), mset().labels.end());
    });
    m.def("measurement_operators", [] {
        ComplexArray out({kNumMeasurements, 4, 4});
        auto w = out.mutable_unchecked<3>();
        for (int k = 0; k < kNumMeasurements; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) w(k, i, j) = mset().operators[k](i, j);
        return out;
    });
    m.def("scan_operator", [](double theta) { return from_cmat(scan_operator(theta)); });
    m.def("random_unitary",
          [](double w1, double w2, double w3) { return from_cmat(random_unitary(w1, w2, w3)); });

    m.def("simulate_counts",
          [](const ComplexArray& rho, double sigma, double p, double n_mean, bool poisson, std::uint64_t seed) {
              const NoiseConfig cfg{sigma, p, n_mean, poisson, seed};
              return from_array(simulate_counts(to_density(rho), mset(), cfg, RngStream(seed)));
          },
          py::arg("rho"), py::arg("sigma") = 0.0, py::arg("p") = 0.0, py::arg("n_mean") = 1000.0,
          py::arg("poisson") = true, py::arg("seed") = 0);

    py::class_<MleReport>(m, "MleReport")
        .def_property_readonly("rho", [](const MleReport& r) { return from_cmat(r.rho.mat()); })
        .def_property_readonly("params", [](const MleReport& r) { return from_array(r.params); })
        .def_readonly("final_objective", &MleReport::final_objective)
        .def_readonly("evaluations", &MleReport::evaluations)
        .def_readonly("restarts_used", &MleReport::restarts_used)
        .def_readonly("converged", &MleReport::converged);

    m.def("reconstruct",
          [](const RealArray& counts, double n_mean, int restarts, std::uint64_t seed, long max_evals) {
              const std::vector<double> c = to_vector(counts);
              MleOptions opts;
              opts.restarts = restarts;
              opts.seed = seed;
              opts.simplex.max_evals = max_evals;
              py::gil_scoped_release unlocked;
              return reconstruct(c, mset(), n_mean, opts);
          },
          py::arg("counts"), py::arg("n_mean"), py::arg("restarts") = 5, py::arg("seed") = MleOptions{}.seed,
          py::arg("max_evals") = SimplexOptions{}.max_evals);
    m.def("linear_inversion", [](const RealArray& counts, double n_mean) {
        return from_cmat(linear_inversion(to_vector(counts), mset(), n_mean));
    });
    m.def("rho_from_params", [](const RealArray& params) {
        const std::vector<double> v = to_vector(params);
        if (v.size() != 16) throw py::value_error("expected 16 parameters");
        CholeskyParams t;
        std::copy(v.begin(), v.end(), t.begin());
        return from_cmat(rho_from_params(t).mat());
    });
    m.def("expected_counts", [](const RealArray& params, double n_mean) {
        const std::vector<double> v = to_vector(params);
        if (v.size() != 16) throw py::value_error("expected 16 parameters");
        CholeskyParams t;
        std::copy(v.begin(), v.end(), t.begin());
        return from_array(expected_counts(t, mset(), n_mean));
    });
    m.def("likelihood", [](const RealArray& measured, const RealArray& expected) {
        return likelihood(to_vector(measured), to_vector(expected));
    });

    m.def("fidelity_pure", [](const ComplexArray& x, const ComplexArray& rho) {
        return fidelity_pure(to_cvec(x), to_density(rho));
    });
    m.def("spin_flip", [](const ComplexArray& rho) { return from_cmat(spin_flip(to_density(rho))); });
    m.def("concurrence", [](const ComplexArray& rho) { return concurrence(to_density(rho)); });
    m.def("concurrence_via_r_matrix", [](const ComplexArray& rho) { return concurrence_via_r_matrix(to_density(rho)); });
    m.def("sample_stats", [](const RealArray& values) {
        const SampleStats s = sample_stats(to_vector(values));
        return py::make_tuple(s.mean, s.std_dev, s.count);
    });

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](const py::object& family, int sample_size, std::vector<double> sigma_grid, double p,
                         double n_mean, bool poisson, std::uint64_t seed, std::string id) {
                 Scenario s;
                 s.family_tag = family_arg(family);
                 s.sample_size = sample_size;
                 s.sigma_grid = sigma_grid.empty() ? default_sigma_grid() : std::move(sigma_grid);
                 s.p = p;
                 s.n_mean = n_mean;
                 s.poisson_enabled = poisson;
                 s.master_seed = seed;
                 s.scenario_id = std::move(id);
                 s.validate();
                 return s;
             }),
             py::arg("family") = "phi", py::arg("sample_size") = kDeskSampleSize,
             py::arg("sigma_grid") = std::vector<double>{}, py::arg("p") = 0.0, py::arg("n_mean") = 1000.0,
             py::arg("poisson") = true, py::arg("seed") = 0, py::arg("id") = "scenario")
        .def_readwrite("family_tag", &Scenario::family_tag)
        .def_readwrite("sample_size", &Scenario::sample_size)
        .def_readwrite("sigma_grid", &Scenario::sigma_grid)
        .def_readwrite("p", &Scenario::p)
        .def_readwrite("n_mean", &Scenario::n_mean)
        .def_readwrite("poisson_enabled", &Scenario::poisson_enabled)
        .def_readwrite("master_seed", &Scenario::master_seed)
        .def_readwrite("scenario_id", &Scenario::scenario_id);

    py::class_<StateResult>(m, "StateResult")
        .def_readonly("sigma", &StateResult::sigma)
        .def_readonly("state_index", &StateResult::state_index)
        .def_readonly("phase", &StateResult::phase)
        .def_readonly("fidelity", &StateResult::fidelity)
        .def_readonly("concurrence", &StateResult::concurrence)
        .def_readonly("converged", &StateResult::converged);

    py::class_<SigmaAggregate>(m, "SigmaAggregate")
        .def_readonly("sigma", &SigmaAggregate::sigma)
        .def_property_readonly("f_mean", [](const SigmaAggregate& a) { return a.fidelity_stats.mean; })
        .def_property_readonly("f_std", [](const SigmaAggregate& a) { return a.fidelity_stats.std_dev; })
        .def_property_readonly("c_mean", [](const SigmaAggregate& a) { return a.concurrence_stats.mean; })
        .def_property_readonly("c_std", [](const SigmaAggregate& a) { return a.concurrence_stats.std_dev; })
        .def_readonly("n_nonconverged", &SigmaAggregate::n_nonconverged);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("scenario_id", &RunResult::scenario_id)
        .def_readonly("per_state", &RunResult::per_state)
        .def_readonly("per_sigma", &RunResult::per_sigma);

    py::class_<ComparisonTable>(m, "ComparisonTable")
        .def_readonly("sigma_grid", &ComparisonTable::sigma_grid)
        .def_readonly("scenario_ids", &ComparisonTable::scenario_ids)
        .def_readonly("columns", &ComparisonTable::columns);

    py::class_<ScanSpec>(m, "ScanSpec")
        .def(py::init([](std::vector<double> theta_grid, int repetitions, double sigma, double p, double n_mean,
                         bool poisson, std::uint64_t seed) {
                 ScanSpec s;
                 s.theta_grid = theta_grid.empty() ? default_theta_grid() : std::move(theta_grid);
                 s.repetitions = repetitions;
                 s.sigma = sigma;
                 s.p = p;
                 s.n_mean = n_mean;
                 s.poisson_enabled = poisson;
                 s.master_seed = seed;
                 s.scan_id = "scan";
                 s.validate();
                 return s;
             }),
             py::arg("theta_grid") = std::vector<double>{}, py::arg("repetitions") = 50, py::arg("sigma") = 0.0,
             py::arg("p") = 0.0, py::arg("n_mean") = 1000.0, py::arg("poisson") = true, py::arg("seed") = 0)
        .def_readwrite("theta_grid", &ScanSpec::theta_grid)
        .def_readwrite("repetitions", &ScanSpec::repetitions)
        .def_readwrite("sigma", &ScanSpec::sigma);

    py::class_<ScanPoint>(m, "ScanPoint")
        .def_readonly("theta", &ScanPoint::theta)
        .def_readonly("mean_count", &ScanPoint::mean_count)
        .def_readonly("std_count", &ScanPoint::std_count)
        .def_readonly("theory_count", &ScanPoint::theory_count);

    m.def("run_sweep",
          [](const Scenario& s, int threads) {
              RunOptions opts;
              opts.threads = threads;
              py::gil_scoped_release unlocked;
              return run_sweep(s, opts);
          },
          py::arg("scenario"), py::arg("threads") = 1);
    m.def("run_scan", [](const ScanSpec& spec, const ComplexArray& rho) {
        const DensityMatrix state = to_density(rho);
        py::gil_scoped_release unlocked;
        return run_scan(spec, state);
    });
    m.def("compare_scenarios",
          [](const std::vector<Scenario>& scenarios, int threads) {
              RunOptions opts;
              opts.threads = threads;
              py::gil_scoped_release unlocked;
              return compare_scenarios(scenarios, opts);
          },
          py::arg("scenarios"), py::arg("threads") = 1);
    m.def("chsh_violation_region", &chsh_violation_region);
    m.def("default_sigma_grid", &default_sigma_grid);
    m.def("default_theta_grid", &default_theta_grid);

    m.def("load_scenarios", &load_scenarios);
    m.def("load_scan_specs", &load_scan_specs);
    m.def("parse_scenarios", [](const std::string& text) {
        std::istringstream in(text);
        return parse_scenarios(in);
    });

    m.def("write_per_state_csv", [](const std::filesystem::path& path, const std::vector<RunResult>& results) {
        write_file(path, [&](std::ostream& out) { write_per_state_csv(out, results); });
    });
    m.def("write_per_sigma_csv", [](const std::filesystem::path& path, const std::vector<RunResult>& results) {
        write_file(path, [&](std::ostream& out) { write_per_sigma_csv(out, results); });
    });
    m.def("write_scan_csv", [](const std::filesystem::path& path, const std::vector<ScanPoint>& points) {
        write_file(path, [&](std::ostream& out) { write_scan_csv(out, points); });
    });
}
