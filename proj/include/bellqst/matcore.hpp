#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bellqst {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense complex vector of dimension 2 or 4.
class CVec {
public:
    CVec() = default;
    explicit CVec(int dim);
    CVec(std::initializer_list<Complex> values);

    int dim() const noexcept { return dim_; }
    Complex& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
    const Complex& operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }

    double norm() const;
    CVec conj() const;

    CVec& operator*=(Complex s);
    friend CVec operator*(Complex s, CVec v) { return v *= s; }
    friend CVec operator+(const CVec& a, const CVec& b);

private:
    int dim_ = 0;
    std::array<Complex, 4> data_{};
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const CVec& a, const CVec& b);

/// Dense complex matrix of dimension 2 or 4, row-major.
class CMat {
public:
    CMat() = default;
    explicit CMat(int dim);
    /// Row-major initialization; the number of values must be 4 or 16.
    CMat(std::initializer_list<Complex> values);

    static CMat identity(int dim);
    static CMat diag(std::initializer_list<Complex> values);
    static CMat outer(const CVec& a, const CVec& b);  // |a><b|

    int dim() const noexcept { return dim_; }
    Complex& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * dim_ + c)]; }
    const Complex& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r * dim_ + c)];
    }

    CMat adjoint() const;
    CMat conj() const;
    Complex trace() const;
    bool all_finite() const;
    /// max |m - m^dagger| over entries.
    double hermiticity_error() const;
    double max_abs_diff(const CMat& other) const;

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(Complex s);

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(Complex s, CMat a) { return a *= s; }
    friend CMat operator*(const CMat& a, const CMat& b);
    friend CVec operator*(const CMat& a, const CVec& v);

private:
    int dim_ = 0;
    std::array<Complex, 16> data_{};
};

/// tr(a b) without forming the product.
Complex trace_product(const CMat& a, const CMat& b);

CMat kron(const CMat& a, const CMat& b);

struct HermitianEigen {
    std::vector<double> values;  // descending
    std::vector<CVec> vectors;   // orthonormal, vectors[i] belongs to values[i]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
HermitianEigen herm_eig(const CMat& m);

/// Eigenvalues below this are treated as numerical noise around zero.
inline constexpr double kPsdClampTolerance = 1e-10;

class NotPsdError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Principal square root of a Hermitian PSD matrix.
CMat psd_sqrt(const CMat& m);

/// All eigenvalues (with multiplicity) of a general 4x4 matrix.
std::vector<Complex> gen_eigvals(const CMat& m);

}  // namespace bellqst
