#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>

namespace sgcircuit {

using complex_t = std::complex<double>;

/// Dense square complex matrix of fixed dimension N (N = 2 or 4 here).
/// Just enough linear algebra to realize the edge-operator identities.
template <std::size_t N>
struct ComplexMatrix {
    std::array<complex_t, N * N> a{};

    complex_t& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
    const complex_t& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

    static ComplexMatrix identity() {
        ComplexMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const complex_t v = x(i, k);
                if (v == complex_t{}) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    friend ComplexMatrix operator*(complex_t s, const ComplexMatrix& x) {
        ComplexMatrix r = x;
        for (auto& v : r.a) v *= s;
        return r;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix r = x;
        for (std::size_t i = 0; i < N * N; ++i) r.a[i] += y.a[i];
        return r;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix r = x;
        for (std::size_t i = 0; i < N * N; ++i) r.a[i] -= y.a[i];
        return r;
    }

    double max_abs_diff(const ComplexMatrix& other) const {
        double d = 0.0;
        for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a[i] - other.a[i]));
        return d;
    }
};

using Mat2 = ComplexMatrix<2>;
using Mat4 = ComplexMatrix<4>;

/// Kronecker product on the two-edge spin space (left factor acts on the
/// left-edge spin, right factor on the right-edge spin).
Mat4 kron(const Mat2& left, const Mat2& right);

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// Ground-manifold operators in the ordered basis
///   |0_L> = |+1/2>_L (x) |-1/2>_R,   |0_R> = |-1/2>_L (x) |+1/2>_R.
/// sigma_l/sigma_r/c_op act on the two-dimensional manifold; the Majorana
/// operators and the fractionalized conjugation live on the full 4-dim
/// two-edge spin space.
struct GroundManifoldAlgebra {
    std::array<std::string, 2> basis{"0_L", "0_R"};
    Mat2 sigma_l;  ///< diag(+1/2, -1/2)
    Mat2 sigma_r;  ///< diag(-1/2, +1/2)
    Mat2 c_op;     ///< phase conjugation restricted to the manifold: |0_L> <-> |0_R>
    Mat4 xi_l;     ///< tau_L^z
    Mat4 xi_r;     ///< tau_L^y tau_R^x
    Mat4 c_op_full;  ///< tau_L^x tau_R^x
    std::array<std::size_t, 2> manifold_indices;  ///< positions of |0_L>, |0_R> in the 4-dim basis
};

/// Build the explicit matrices and verify every algebraic identity
/// ({xi_r, xi_r'} = 2 delta, C = i xi_L xi_R, C^2 = 1, sigma_l + sigma_r = 0
/// on the manifold) on construction; throws std::logic_error on mismatch.
GroundManifoldAlgebra ground_manifold_algebra();

}  // namespace sgcircuit
