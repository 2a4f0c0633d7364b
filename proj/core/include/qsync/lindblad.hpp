#pragma once

#include <vector>

#include "qsync/layout.hpp"
#include "qsync/states.hpp"
#include "qsync/types.hpp"

namespace qsync {

/// A dissipation channel: jump operator (full dimension) and nonnegative rate.
/// The rate convention carries the factor 2 inside the dissipator (see
/// build_liouvillian), so a cavity channel (a, kappa) decays <n> at 2*kappa.
struct JumpChannel {
    Matrix op;
    double rate = 0.0;
};

/// D²×D² matrix acting on column-vectorized density matrices.
class SuperOperator {
public:
    SuperOperator(Matrix matrix, HilbertLayout layout);

    const Matrix& matrix() const { return matrix_; }
    const HilbertLayout& layout() const { return layout_; }
    int dim() const { return layout_.dim(); }

private:
    Matrix matrix_;
    HilbertLayout layout_;
};

/// A CPTP map in vectorized form together with the time it implements.
struct DissipativeMap {
    Matrix matrix;
    double duration = 0.0;
    HilbertLayout layout;
};

// Column-major vectorization: vec(rho)[c*D + r] = rho(r, c), so that
// vec(A rho B) = (B^T ⊗ A) vec(rho).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int dim);

/// Lindblad generator with the convention
///   L(rho) = -i[H, rho] + sum_c rate_c (2 C rho C† - C†C rho - rho C†C).
/// H must be Hermitian (1e-10). The result annihilates the trace:
/// vec(I)† L = 0 within 1e-10 per entry.
SuperOperator build_liouvillian(const Matrix& H, const std::vector<JumpChannel>& channels,
                                const HilbertLayout& layout);

/// exp(L*t), entries checked finite. Padé scaling-and-squaring (Eigen).
Matrix propagator(const SuperOperator& L, double t);

/// Exact propagation: unvec(exp(L t) vec(rho)), hermitized and re-validated.
DensityMatrix propagate_expm(const SuperOperator& L, const DensityMatrix& rho, double t);

/// Classical fixed-step RK4 on dvec(rho)/dt = L vec(rho). Independent of the
/// matrix-exponential path; kept as its cross-check.
DensityMatrix propagate_rk4(const SuperOperator& L, const DensityMatrix& rho, double t, double dt);

/// Single-cavity dynamical map exp(L_cav*dt) with
/// L_cav = -i[delta a†a, ·] + kappa(2 a · a† - {a†a, ·}) on n_fock Fock states.
DissipativeMap cavity_dissipator_map(double delta, double kappa, double dt, int n_fock);

/// Matrix exponential wrapper; throws NumericError on non-finite output.
Matrix matrix_exp(const Matrix& m);

/// Max column-sum norm residual of trace preservation, ||vec(I)† M - vec(I)†||_inf.
double trace_preservation_defect(const Matrix& map_matrix, int dim);

}  // namespace qsync
