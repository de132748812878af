#include "sgcircuit/algebra.hpp"

#include <stdexcept>

namespace sgcircuit {

Mat4 kron(const Mat2& left, const Mat2& right) {
    Mat4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = left(i, j) * right(k, l);
    return r;
}

Mat2 pauli_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m(0, 1) = complex_t{0.0, -1.0};
    m(1, 0) = complex_t{0.0, 1.0};
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

GroundManifoldAlgebra ground_manifold_algebra() {
    GroundManifoldAlgebra g;

    // Manifold block: sigma_{L,R} restricted to (|0_L>, |0_R>).
    g.sigma_l(0, 0) = 0.5;
    g.sigma_l(1, 1) = -0.5;
    g.sigma_r(0, 0) = -0.5;
    g.sigma_r(1, 1) = 0.5;
    g.c_op = pauli_x();

    // Two-edge spin space, basis |s_L s_R> ordered (++, +-, -+, --):
    // |0_L> = |+-> (index 1), |0_R> = |-+> (index 2).
    g.manifold_indices = {1, 2};
    const Mat2 id = Mat2::identity();
    const Mat4 tau_l_x = kron(pauli_x(), id);
    const Mat4 tau_l_y = kron(pauli_y(), id);
    const Mat4 tau_l_z = kron(pauli_z(), id);
    const Mat4 tau_r_x = kron(id, pauli_x());

    g.xi_l = tau_l_z;
    g.xi_r = tau_l_y * tau_r_x;
    g.c_op_full = tau_l_x * tau_r_x;

    // Verify the algebra before handing the object out.
    const Mat4 id4 = Mat4::identity();
    const auto check = [](double diff, const char* what) {
        if (diff > 1e-15) throw std::logic_error(std::string("ground_manifold_algebra: ") + what);
    };
    check((g.xi_l * g.xi_l).max_abs_diff(id4), "xi_L^2 != 1");
    check((g.xi_r * g.xi_r).max_abs_diff(id4), "xi_R^2 != 1");
    check((g.xi_l * g.xi_r + g.xi_r * g.xi_l).max_abs_diff(Mat4{}), "{xi_L, xi_R} != 0");
    check((complex_t{0.0, 1.0} * (g.xi_l * g.xi_r)).max_abs_diff(g.c_op_full), "C != i xi_L xi_R");
    check((g.c_op_full * g.c_op_full).max_abs_diff(id4), "C^2 != 1");
    check((g.c_op * g.c_op).max_abs_diff(Mat2::identity()), "manifold C^2 != 1");
    check((g.sigma_l + g.sigma_r).max_abs_diff(Mat2{}), "sigma_L + sigma_R != 0 on the manifold");

    // C maps |0_L> to |0_R> in the full space as well.
    const auto i0 = g.manifold_indices[0];
    const auto i1 = g.manifold_indices[1];
    if (std::abs(g.c_op_full(i1, i0) - complex_t{1.0, 0.0}) > 1e-15 ||
        std::abs(g.c_op_full(i0, i1) - complex_t{1.0, 0.0}) > 1e-15)
        throw std::logic_error("ground_manifold_algebra: C does not exchange the ground states");

    return g;
}

}  // namespace sgcircuit
