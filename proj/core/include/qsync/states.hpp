#pragma once

#include <string_view>
#include <vector>

#include "qsync/layout.hpp"
#include "qsync/types.hpp"

namespace qsync {

/// Normalized state vector on a layout (unit norm within 1e-12).
class PureState {
public:
    PureState(Vector amplitudes, HilbertLayout layout);

    const Vector& amplitudes() const { return amplitudes_; }
    const HilbertLayout& layout() const { return layout_; }
    int dim() const { return layout_.dim(); }
    Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
    Vector amplitudes_;
    HilbertLayout layout_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix tied to a layout.
/// Construction validates all three properties (tolerances in qsync::tol) and
/// throws NumericError when they are violated.
class DensityMatrix {
public:
    DensityMatrix(Matrix matrix, HilbertLayout layout);
    static DensityMatrix from_pure(const PureState& psi);

    const Matrix& matrix() const { return matrix_; }
    const HilbertLayout& layout() const { return layout_; }
    int dim() const { return layout_.dim(); }

private:
    Matrix matrix_;
    HilbertLayout layout_;
};

/// Kronecker product of per-factor kets, in layout order.
PureState product_state(const HilbertLayout& layout, const std::vector<Vector>& factor_kets);

/// Reduced state on the kept factors (original relative order preserved).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Partial trace on a raw matrix; linear, no state validation. Used by the
/// density-matrix overload and by maps that act on unnormalized branches.
Matrix partial_trace_raw(const Matrix& m, const HilbertLayout& layout,
                         const std::vector<std::string>& keep);

HilbertLayout reduced_layout(const HilbertLayout& layout, const std::vector<std::string>& keep);

/// Trace out the slot and re-insert it in the pure state `fresh`, preserving
/// the original factor order and the trace.
DensityMatrix replace_subsystem(const DensityMatrix& rho, std::string_view slot,
                                const PureState& fresh);

/// Raw-matrix version of replace_subsystem (linear in its input).
Matrix replace_subsystem_raw(const Matrix& m, const HilbertLayout& layout, std::string_view slot,
                             const Vector& fresh_ket);

}  // namespace qsync
