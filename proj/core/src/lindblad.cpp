#include "qsync/lindblad.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsync/operators.hpp"

namespace qsync {

SuperOperator::SuperOperator(Matrix matrix, HilbertLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    const Eigen::Index d2 = static_cast<Eigen::Index>(layout_.dim()) * layout_.dim();
    if (matrix_.rows() != d2 || matrix_.cols() != d2)
        throw std::invalid_argument("SuperOperator: matrix must be D²×D² for the layout");
    if (!is_finite(matrix_)) throw NumericError("SuperOperator: non-finite entries");
}

Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim)
        throw std::invalid_argument("unvec: size is not dim²");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

SuperOperator build_liouvillian(const Matrix& H, const std::vector<JumpChannel>& channels,
                                const HilbertLayout& layout) {
    const int D = layout.dim();
    if (H.rows() != D || H.cols() != D)
        throw std::invalid_argument("build_liouvillian: H dim does not match layout");
    if (!is_hermitian(H)) throw std::invalid_argument("build_liouvillian: H is not Hermitian");

    const Matrix id = Matrix::Identity(D, D);
    const Complex mi(0, -1);
    Matrix L = mi * (Eigen::kroneckerProduct(id, H) - Eigen::kroneckerProduct(H.transpose(), id));
    for (const auto& ch : channels) {
        if (ch.op.rows() != D || ch.op.cols() != D)
            throw std::invalid_argument("build_liouvillian: jump operator dim mismatch");
        if (!(ch.rate >= 0.0)) throw std::invalid_argument("build_liouvillian: negative rate");
        if (ch.rate == 0.0) continue;
        const Matrix cdc = ch.op.adjoint() * ch.op;
        L += ch.rate * (2.0 * Eigen::kroneckerProduct(ch.op.conjugate(), ch.op)
                        - Eigen::kroneckerProduct(id, cdc)
                        - Eigen::kroneckerProduct(cdc.transpose(), id));
    }

    // Generator-level trace preservation: vec(I)† L = 0.
    const double defect = (vec(id).adjoint() * L).cwiseAbs().maxCoeff();
    if (defect > tol::hermiticity)
        throw NumericError("build_liouvillian: trace not annihilated, defect " + std::to_string(defect));
    return SuperOperator(std::move(L), layout);
}

Matrix matrix_exp(const Matrix& m) {
    Matrix e = m.exp();
    if (!is_finite(e)) throw NumericError("matrix_exp: non-finite result");
    return e;
}

Matrix propagator(const SuperOperator& L, double t) {
    if (t < 0.0) throw std::invalid_argument("propagator: t must be nonnegative");
    return matrix_exp(L.matrix() * t);
}

DensityMatrix propagate_expm(const SuperOperator& L, const DensityMatrix& rho, double t) {
    if (L.layout() != rho.layout())
        throw std::invalid_argument("propagate_expm: layout mismatch");
    const Matrix M = propagator(L, t);
    Vector v = M * vec(rho.matrix());
    if (!v.allFinite()) throw NumericError("propagate_expm: non-finite state");
    return DensityMatrix(hermitize(unvec(v, rho.dim())), rho.layout());
}

DensityMatrix propagate_rk4(const SuperOperator& L, const DensityMatrix& rho, double t, double dt) {
    if (L.layout() != rho.layout())
        throw std::invalid_argument("propagate_rk4: layout mismatch");
    if (t < 0.0) throw std::invalid_argument("propagate_rk4: t must be nonnegative");
    if (t == 0.0) return rho;
    if (!(dt > 0.0) || dt > t) throw std::invalid_argument("propagate_rk4: need 0 < dt <= t");

    const Matrix& Lm = L.matrix();
    const double norm1 = Lm.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 * dt >= 1.0)
        std::cerr << "propagate_rk4: warning, ||L||*dt = " << norm1 * dt
                  << " >= 1; step size likely too coarse\n";

    const long n_full = static_cast<long>(std::floor(t / dt + 1e-12));
    const double rem = t - static_cast<double>(n_full) * dt;

    Vector v = vec(rho.matrix());
    Vector k1, k2, k3, k4;
    auto step = [&](double h) {
        k1.noalias() = Lm * v;
        k2.noalias() = Lm * (v + (h / 2.0) * k1);
        k3.noalias() = Lm * (v + (h / 2.0) * k2);
        k4.noalias() = Lm * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    for (long i = 0; i < n_full; ++i) step(dt);
    if (rem > 1e-12 * t) step(rem);

    if (!v.allFinite()) throw NumericError("propagate_rk4: non-finite state");
    return DensityMatrix(hermitize(unvec(v, rho.dim())), rho.layout());
}

DissipativeMap cavity_dissipator_map(double delta, double kappa, double dt, int n_fock) {
    if (!(dt > 0.0)) throw std::invalid_argument("cavity_dissipator_map: dt must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("cavity_dissipator_map: kappa must be positive");
    HilbertLayout layout({{"p", n_fock}});
    const BosonicOps b = bosonic_ops(n_fock);
    const SuperOperator L = build_liouvillian(delta * b.n, {{b.a, kappa}}, layout);
    Matrix M = matrix_exp(L.matrix() * dt);
    const double defect = trace_preservation_defect(M, n_fock);
    if (defect > tol::trace_preserving)
        throw NumericError("cavity_dissipator_map: trace preservation defect " + std::to_string(defect));
    return DissipativeMap{std::move(M), dt, std::move(layout)};
}

double trace_preservation_defect(const Matrix& map_matrix, int dim) {
    const Vector id_vec = vec(Matrix::Identity(dim, dim));
    return ((id_vec.adjoint() * map_matrix).transpose() - id_vec.conjugate()).cwiseAbs().maxCoeff();
}

}  // namespace qsync
