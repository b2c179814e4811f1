#include "bellqst/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bellqst {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw std::invalid_argument("dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

void check_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

int dim_from_count(std::size_t count, bool square) {
    if (square) {
        if (count == 4) return 2;
        if (count == 16) return 4;
    } else if (count == 2 || count == 4) {
        return static_cast<int>(count);
    }
    throw std::invalid_argument("unsupported number of initializer values: " +
                                std::to_string(count));
}

}  // namespace

// ---------------------------------------------------------------------------
// CVec

CVec::CVec(int dim) : dim_(dim) { check_dim(dim); }

CVec::CVec(std::initializer_list<Complex> values)
    : dim_(dim_from_count(values.size(), false)) {
    std::copy(values.begin(), values.end(), data_.begin());
}

double CVec::norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::norm(data_[i]);
    return std::sqrt(s);
}

CVec CVec::conj() const {
    CVec out(*this);
    for (int i = 0; i < dim_; ++i) out.data_[i] = std::conj(data_[i]);
    return out;
}

CVec& CVec::operator*=(Complex s) {
    for (int i = 0; i < dim_; ++i) data_[i] *= s;
    return *this;
}

CVec operator+(const CVec& a, const CVec& b) {
    check_same_dim(a.dim(), b.dim(), "vector sum");
    CVec out(a);
    for (int i = 0; i < a.dim(); ++i) out[i] += b[i];
    return out;
}

Complex inner(const CVec& a, const CVec& b) {
    check_same_dim(a.dim(), b.dim(), "inner product");
    Complex s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// ---------------------------------------------------------------------------
// CMat

CMat::CMat(int dim) : dim_(dim) { check_dim(dim); }

CMat::CMat(std::initializer_list<Complex> values) : dim_(dim_from_count(values.size(), true)) {
    std::copy(values.begin(), values.end(), data_.begin());
}

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diag(std::initializer_list<Complex> values) {
    CMat m(static_cast<int>(values.size()));
    int i = 0;
    for (const auto& v : values) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

CMat CMat::outer(const CVec& a, const CVec& b) {
    check_same_dim(a.dim(), b.dim(), "outer product");
    CMat m(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
    return m;
}

CMat CMat::adjoint() const {
    CMat out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMat CMat::conj() const {
    CMat out(*this);
    for (int i = 0; i < dim_ * dim_; ++i) out.data_[i] = std::conj(data_[i]);
    return out;
}

Complex CMat::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

bool CMat::all_finite() const {
    for (int i = 0; i < dim_ * dim_; ++i) {
        if (!std::isfinite(data_[i].real()) || !std::isfinite(data_[i].imag())) return false;
    }
    return true;
}

double CMat::hermiticity_error() const {
    double err = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return err;
}

double CMat::max_abs_diff(const CMat& other) const {
    check_same_dim(dim_, other.dim_, "comparison");
    double err = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) err = std::max(err, std::abs(data_[i] - other.data_[i]));
    return err;
}

CMat& CMat::operator+=(const CMat& o) {
    check_same_dim(dim_, o.dim_, "matrix sum");
    for (int i = 0; i < dim_ * dim_; ++i) data_[i] += o.data_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    check_same_dim(dim_, o.dim_, "matrix difference");
    for (int i = 0; i < dim_ * dim_; ++i) data_[i] -= o.data_[i];
    return *this;
}

CMat& CMat::operator*=(Complex s) {
    for (int i = 0; i < dim_ * dim_; ++i) data_[i] *= s;
    return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
    check_same_dim(a.dim(), b.dim(), "matrix product");
    const int n = a.dim();
    CMat out(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

CVec operator*(const CMat& a, const CVec& v) {
    check_same_dim(a.dim(), v.dim(), "matrix-vector product");
    CVec out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out[r] += a(r, c) * v[c];
    return out;
}

Complex trace_product(const CMat& a, const CMat& b) {
    check_same_dim(a.dim(), b.dim(), "trace of product");
    Complex t = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) t += a(r, c) * b(c, r);
    return t;
}

CMat kron(const CMat& a, const CMat& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("kron: both operands must be 2x2");
    }
    CMat out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

HermitianEigen herm_eig(const CMat& m) {
    if (!m.all_finite()) throw std::invalid_argument("herm_eig: non-finite entries");
    if (m.hermiticity_error() > 1e-10) {
        throw std::invalid_argument("herm_eig: matrix is not Hermitian");
    }
    const int n = m.dim();
    CMat a = m;
    // Symmetrize away the sub-tolerance asymmetry so rotations act on an exact Hermitian.
    for (int r = 0; r < n; ++r) {
        a(r, r) = a(r, r).real();
        for (int c = r + 1; c < n; ++c) {
            const Complex v = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = v;
            a(c, r) = std::conj(v);
        }
    }
    CMat v = CMat::identity(n);

    double scale = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off <= 1e-34 * std::max(scale * scale, 1e-300) || off == 0.0) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                const Complex phase = a(p, q) / mag;  // a_pq = |a_pq| e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] in the (p, q) plane.
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                // a <- a G
                for (int r = 0; r < n; ++r) {
                    const Complex arp = a(r, p);
                    const Complex arq = a(r, q);
                    a(r, p) = arp * gpp + arq * gqp;
                    a(r, q) = arp * gpq + arq * gqq;
                }
                // a <- G^dagger a
                for (int col = 0; col < n; ++col) {
                    const Complex apc = a(p, col);
                    const Complex aqc = a(q, col);
                    a(p, col) = std::conj(gpp) * apc + std::conj(gqp) * aqc;
                    a(q, col) = std::conj(gpq) * apc + std::conj(gqq) * aqc;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                // v <- v G
                for (int r = 0; r < n; ++r) {
                    const Complex vrp = v(r, p);
                    const Complex vrq = v(r, q);
                    v(r, p) = vrp * gpp + vrq * gqp;
                    v(r, q) = vrp * gpq + vrq * gqq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });

    HermitianEigen out;
    for (int idx : order) {
        out.values.push_back(a(idx, idx).real());
        CVec vec(n);
        for (int r = 0; r < n; ++r) vec[r] = v(r, idx);
        out.vectors.push_back(vec);
    }
    return out;
}

CMat psd_sqrt(const CMat& m) {
    const HermitianEigen eig = herm_eig(m);
    CMat out(m.dim());
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        double lambda = eig.values[i];
        if (lambda < -kPsdClampTolerance) {
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                              " below clamp tolerance");
        }
        lambda = std::max(lambda, 0.0);
        if (lambda == 0.0) continue;
        out += Complex(std::sqrt(lambda)) * CMat::outer(eig.vectors[i], eig.vectors[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// General eigenvalues: balancing, Householder Hessenberg reduction, shifted complex QR.

namespace {

void balance(CMat& a) {
    const int n = a.dim();
    constexpr double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            double col = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                col += std::abs(a(j, i));
                row += std::abs(a(i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            double g = row / radix;
            double f = 1.0;
            const double s = col + row;
            while (col < g) {
                f *= radix;
                col *= radix * radix;
            }
            g = row * radix;
            while (col > g) {
                f /= radix;
                col /= radix * radix;
            }
            if ((col + row) / f < 0.95 * s) {
                done = false;
                for (int j = 0; j < n; ++j) a(i, j) /= f;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

void to_hessenberg(CMat& a) {
    const int n = a.dim();
    for (int k = 0; k < n - 2; ++k) {
        double alpha_norm = 0.0;
        for (int i = k + 1; i < n; ++i) alpha_norm += std::norm(a(i, k));
        alpha_norm = std::sqrt(alpha_norm);
        if (alpha_norm == 0.0) continue;

        const Complex x0 = a(k + 1, k);
        const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
        std::array<Complex, 4> u{};
        for (int i = k + 1; i < n; ++i) u[i] = a(i, k);
        u[k + 1] += phase * alpha_norm;
        double unorm = 0.0;
        for (int i = k + 1; i < n; ++i) unorm += std::norm(u[i]);
        if (unorm == 0.0) continue;
        // P = I - 2 u u^dagger / (u^dagger u); a <- P a P
        for (int col = 0; col < n; ++col) {
            Complex dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(u[i]) * a(i, col);
            const Complex f = 2.0 * dot / unorm;
            for (int i = k + 1; i < n; ++i) a(i, col) -= f * u[i];
        }
        for (int row = 0; row < n; ++row) {
            Complex dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += a(row, i) * u[i];
            const Complex f = 2.0 * dot / unorm;
            for (int i = k + 1; i < n; ++i) a(row, i) -= f * std::conj(u[i]);
        }
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    // Eigenvalue of [[a, b], [c, d]] closest to d.
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr / 4.0 - det);
    const Complex l1 = tr / 2.0 + disc;
    const Complex l2 = tr / 2.0 - disc;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<Complex> gen_eigvals(const CMat& m) {
    if (m.dim() != 4) throw std::invalid_argument("gen_eigvals: expected a 4x4 matrix");
    if (!m.all_finite()) throw std::invalid_argument("gen_eigvals: non-finite entries");

    CMat h = m;
    balance(h);
    to_hessenberg(h);

    constexpr double eps = 2.220446049250313e-16;
    std::vector<Complex> eig(4);
    int hi = 3;
    int iter = 0;
    int total = 0;
    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = h(0, 0);
            break;
        }
        // Find the lowest index l such that h(l, l-1) is negligible.
        int l = hi;
        while (l > 0) {
            const double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (std::abs(h(l, l - 1)) <= eps * (s == 0.0 ? 1.0 : s)) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            eig[static_cast<std::size_t>(hi)] = h(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++total > 1000) {
            // Unreachable for finite 4x4 input; return current diagonal rather than loop.
            for (int i = 0; i <= hi; ++i) eig[static_cast<std::size_t>(i)] = h(i, i);
            break;
        }
        ++iter;
        Complex mu;
        if (iter % 11 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));  // exceptional shift
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }
        // QR step on the active block [l, hi] with Givens rotations.
        for (int i = l; i <= hi; ++i) h(i, i) -= mu;
        std::array<Complex, 4> gc{};
        std::array<Complex, 4> gs{};
        for (int k = l; k < hi; ++k) {
            const Complex x = h(k, k);
            const Complex y = h(k + 1, k);
            const double r = std::hypot(std::abs(x), std::abs(y));
            Complex c = 1.0;
            Complex s = 0.0;
            if (r != 0.0) {
                c = x / r;
                s = y / r;
            }
            gc[k] = c;
            gs[k] = s;
            // Rows k, k+1: [conj(c) conj(s); -s c]
            for (int col = k; col < 4; ++col) {
                const Complex a0 = h(k, col);
                const Complex a1 = h(k + 1, col);
                h(k, col) = std::conj(c) * a0 + std::conj(s) * a1;
                h(k + 1, col) = -s * a0 + c * a1;
            }
        }
        for (int k = l; k < hi; ++k) {
            const Complex c = gc[k];
            const Complex s = gs[k];
            // Columns k, k+1 multiplied by Q_k = [c -conj(s); s conj(c)]
            for (int row = 0; row <= std::min(k + 1, hi); ++row) {
                const Complex a0 = h(row, k);
                const Complex a1 = h(row, k + 1);
                h(row, k) = a0 * c + a1 * s;
                h(row, k + 1) = -a0 * std::conj(s) + a1 * std::conj(c);
            }
        }
        for (int i = l; i <= hi; ++i) h(i, i) += mu;
    }
    return eig;
}

}  // namespace bellqst
