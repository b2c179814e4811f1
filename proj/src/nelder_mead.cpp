#include "bellqst/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bellqst {

namespace {

struct Simplex {
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
};

class Run {
public:
    Run(const Objective& f, const SimplexOptions& opts, std::size_t n)
        : f_(f), opts_(opts), n_(n) {
        const double dn = static_cast<double>(n);
        alpha_ = 1.0;
        gamma_ = 1.0 + 2.0 / dn;
        rho_ = 0.75 - 1.0 / (2.0 * dn);
        shrink_ = 1.0 - 1.0 / dn;
    }

    long evals() const { return evals_; }
    bool budget_left() const { return evals_ < opts_.max_evals; }

    double eval(const std::vector<double>& x) {
        ++evals_;
        const double v = f_(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    }

    Simplex build(const std::vector<double>& x0, double x0_val) {
        Simplex s;
        s.pts.push_back(x0);
        s.vals.push_back(x0_val);
        for (std::size_t i = 0; i < n_ && budget_left(); ++i) {
            std::vector<double> p = x0;
            p[i] += opts_.initial_step;
            s.vals.push_back(eval(p));
            s.pts.push_back(std::move(p));
        }
        return s;
    }

    // Returns true when the spread criterion fired, false when the budget ran out.
    bool descend(Simplex& s) {
        if (s.pts.size() != n_ + 1) return false;
        std::vector<std::size_t> order(n_ + 1);
        std::vector<double> centroid(n_);
        std::vector<double> xr(n_), xe(n_), xc(n_);

        while (true) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return s.vals[a] < s.vals[b]; });
            const std::size_t best = order.front();
            const std::size_t worst = order.back();
            const std::size_t second = order[n_ - 1];

            const double spread = s.vals[worst] - s.vals[best];
            if (spread <= opts_.rel_tol * std::max(1.0, std::abs(s.vals[best]))) return true;
            if (!budget_left()) return false;

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t i = 0; i <= n_; ++i) {
                if (i == worst) continue;
                for (std::size_t d = 0; d < n_; ++d) centroid[d] += s.pts[i][d];
            }
            for (double& c : centroid) c /= static_cast<double>(n_);

            for (std::size_t d = 0; d < n_; ++d)
                xr[d] = centroid[d] + alpha_ * (centroid[d] - s.pts[worst][d]);
            const double fr = eval(xr);

            if (fr < s.vals[best]) {
                for (std::size_t d = 0; d < n_; ++d)
                    xe[d] = centroid[d] + gamma_ * (xr[d] - centroid[d]);
                const double fe = eval(xe);
                if (fe < fr) {
                    s.pts[worst] = xe;
                    s.vals[worst] = fe;
                } else {
                    s.pts[worst] = xr;
                    s.vals[worst] = fr;
                }
                continue;
            }
            if (fr < s.vals[second]) {
                s.pts[worst] = xr;
                s.vals[worst] = fr;
                continue;
            }
            const bool outside = fr < s.vals[worst];
            for (std::size_t d = 0; d < n_; ++d) {
                xc[d] = outside ? centroid[d] + rho_ * (xr[d] - centroid[d])
                                : centroid[d] + rho_ * (s.pts[worst][d] - centroid[d]);
            }
            const double fc = eval(xc);
            if (fc < (outside ? fr : s.vals[worst])) {
                s.pts[worst] = xc;
                s.vals[worst] = fc;
                continue;
            }
            for (std::size_t i = 0; i <= n_; ++i) {
                if (i == best) continue;
                for (std::size_t d = 0; d < n_; ++d)
                    s.pts[i][d] = s.pts[best][d] + shrink_ * (s.pts[i][d] - s.pts[best][d]);
                s.vals[i] = eval(s.pts[i]);
            }
        }
    }

private:
    const Objective& f_;
    const SimplexOptions& opts_;
    std::size_t n_;
    long evals_ = 0;
    double alpha_, gamma_, rho_, shrink_;
};

std::size_t argmin(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::span<const double> start,
                          const SimplexOptions& opts) {
    if (start.empty()) throw std::invalid_argument("nelder_mead: empty start point");
    const std::size_t n = start.size();
    Run run(f, opts, n);

    std::vector<double> x(start.begin(), start.end());
    double fx = run.eval(x);
    bool converged = false;

    for (int rebuild = 0; rebuild <= opts.max_rebuilds; ++rebuild) {
        Simplex s = run.build(x, fx);
        converged = run.descend(s);
        const std::size_t b = argmin(s.vals);
        const double improvement = fx - s.vals[b];
        if (s.vals[b] <= fx) {
            x = s.pts[b];
            fx = s.vals[b];
        }
        if (!converged) break;
        if (improvement <= opts.rel_tol * std::max(1.0, std::abs(fx))) break;
    }
    return {std::move(x), fx, run.evals(), converged};
}

}  // namespace bellqst
