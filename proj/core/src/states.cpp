#include "qsync/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qsync {

PureState::PureState(Vector amplitudes, HilbertLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
    if (amplitudes_.size() != layout_.dim())
        throw std::invalid_argument("PureState: amplitude count does not match layout dim");
    if (!amplitudes_.allFinite()) throw NumericError("PureState: non-finite amplitudes");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > tol::unit_norm)
        throw NumericError("PureState: norm deviates from 1 by " + std::to_string(std::abs(norm - 1.0)));
}

DensityMatrix::DensityMatrix(Matrix matrix, HilbertLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    const int d = layout_.dim();
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw std::invalid_argument("DensityMatrix: matrix dim does not match layout");
    if (!is_finite(matrix_)) throw NumericError("DensityMatrix: non-finite entries");
    const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::hermiticity)
        throw NumericError("DensityMatrix: hermiticity violated by " + std::to_string(herm));
    const double tr_err = std::abs(matrix_.trace() - Complex(1.0, 0.0));
    if (tr_err > tol::trace_one)
        throw NumericError("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(matrix_), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < tol::positivity)
        throw NumericError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.projector(), psi.layout());
}

PureState product_state(const HilbertLayout& layout, const std::vector<Vector>& factor_kets) {
    if (static_cast<int>(factor_kets.size()) != layout.factor_count())
        throw std::invalid_argument("product_state: one ket per factor required");
    Vector amp = Vector::Ones(1);
    for (int i = 0; i < layout.factor_count(); ++i) {
        if (factor_kets[static_cast<std::size_t>(i)].size() != layout.factor(i).dim)
            throw std::invalid_argument("product_state: ket dim mismatch on factor " + layout.factor(i).label);
        amp = Eigen::kroneckerProduct(amp, factor_kets[static_cast<std::size_t>(i)]).eval();
    }
    return PureState(amp, layout);
}

namespace {

std::vector<int> keep_positions(const HilbertLayout& layout, const std::vector<std::string>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must not be empty");
    std::set<std::string> uniq(keep.begin(), keep.end());
    if (uniq.size() != keep.size()) throw std::invalid_argument("partial_trace: duplicate labels in keep set");
    std::vector<int> pos;
    pos.reserve(keep.size());
    for (const auto& label : keep) pos.push_back(layout.index_of(label));
    std::sort(pos.begin(), pos.end());
    return pos;
}

}  // namespace

HilbertLayout reduced_layout(const HilbertLayout& layout, const std::vector<std::string>& keep) {
    std::vector<int> pos = keep_positions(layout, keep);
    std::vector<Factor> factors;
    factors.reserve(pos.size());
    for (int p : pos) factors.push_back(layout.factor(p));
    return HilbertLayout(std::move(factors));
}

Matrix partial_trace_raw(const Matrix& m, const HilbertLayout& layout,
                         const std::vector<std::string>& keep) {
    const int D = layout.dim();
    if (m.rows() != D || m.cols() != D)
        throw std::invalid_argument("partial_trace: matrix dim does not match layout");
    std::vector<int> pos = keep_positions(layout, keep);
    IndexSplit split(layout, pos);
    const int dk = split.sel_dim();
    Matrix out = Matrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            Complex acc(0, 0);
            for (int r = 0; r < split.rest_dim(); ++r) acc += m(split.fuse(i, r), split.fuse(j, r));
            out(i, j) = acc;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    Matrix reduced = partial_trace_raw(rho.matrix(), rho.layout(), keep);
    return DensityMatrix(hermitize(reduced), reduced_layout(rho.layout(), keep));
}

Matrix replace_subsystem_raw(const Matrix& m, const HilbertLayout& layout, std::string_view slot,
                             const Vector& fresh_ket) {
    const int pos = layout.index_of(slot);
    const int d = layout.factor(pos).dim;
    if (fresh_ket.size() != d)
        throw std::invalid_argument("replace_subsystem: state dim does not match slot");

    std::vector<std::string> others;
    for (const auto& f : layout.factors())
        if (f.label != slot) others.push_back(f.label);

    IndexSplit split(layout, {pos});
    const Matrix proj = fresh_ket * fresh_ket.adjoint();
    const int D = layout.dim();
    Matrix out = Matrix::Zero(D, D);
    if (others.empty()) {
        out = proj * m.trace();
        return out;
    }
    const Matrix rest = partial_trace_raw(m, layout, others);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (proj(i, j) == Complex(0, 0)) continue;
            for (int r = 0; r < split.rest_dim(); ++r)
                for (int c = 0; c < split.rest_dim(); ++c)
                    out(split.fuse(i, r), split.fuse(j, c)) = proj(i, j) * rest(r, c);
        }
    return out;
}

DensityMatrix replace_subsystem(const DensityMatrix& rho, std::string_view slot,
                                const PureState& fresh) {
    if (fresh.dim() != rho.layout().dim_of(slot))
        throw std::invalid_argument("replace_subsystem: state dim does not match slot");
    Matrix out = replace_subsystem_raw(rho.matrix(), rho.layout(), slot, fresh.amplitudes());
    return DensityMatrix(hermitize(out), rho.layout());
}

}  // namespace qsync
