#include "qsync/schedule.hpp"

#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qsync/lindblad.hpp"
#include "qsync/operators.hpp"

namespace qsync {

Schedule::Schedule(std::vector<ScheduleBlock> blocks, double step_duration, HilbertLayout layout)
    : blocks_(std::move(blocks)), step_duration_(step_duration), layout_(std::move(layout)) {
    if (!(step_duration_ > 0.0)) throw std::invalid_argument("Schedule: step duration must be positive");
    const int D = layout_.dim();
    for (const auto& b : blocks_) {
        if (!is_finite(b.matrix)) throw NumericError("Schedule: non-finite block '" + b.name + "'");
        if (b.acts_on.empty()) throw std::invalid_argument("Schedule: block '" + b.name + "' acts on nothing");
        int sub = 1;
        for (const auto& label : b.acts_on) sub *= layout_.dim_of(label);
        if (b.kind == ScheduleBlock::Kind::unitary) {
            if (b.matrix.rows() != D || b.matrix.cols() != D)
                throw std::invalid_argument("Schedule: unitary block '" + b.name + "' must be full-dimension");
            const double defect =
                (b.matrix.adjoint() * b.matrix - Matrix::Identity(D, D)).cwiseAbs().maxCoeff();
            if (defect > tol::unitarity)
                throw NumericError("Schedule: block '" + b.name + "' unitarity defect " + std::to_string(defect));
        } else {
            if (b.matrix.rows() != sub * sub || b.matrix.cols() != sub * sub)
                throw std::invalid_argument("Schedule: dissipative block '" + b.name + "' dim mismatch");
            const double defect = trace_preservation_defect(b.matrix, sub);
            if (defect > tol::trace_preserving)
                throw NumericError("Schedule: block '" + b.name + "' trace defect " + std::to_string(defect));
        }
    }
}

Matrix Schedule::apply_raw(const Matrix& rho) const {
    Matrix state = rho;
    for (const auto& b : blocks_) {
        if (b.kind == ScheduleBlock::Kind::unitary)
            state = b.matrix * state * b.matrix.adjoint();
        else
            state = apply_local_superoperator(state, b.matrix, b.acts_on, layout_);
    }
    return state;
}

DensityMatrix Schedule::apply(const DensityMatrix& rho) const {
    if (rho.layout() != layout_) throw std::invalid_argument("Schedule: state layout mismatch");
    return DensityMatrix(hermitize(apply_raw(rho.matrix())), layout_);
}

Matrix Schedule::to_superoperator() const {
    const int D = layout_.dim();
    const Eigen::Index d2 = static_cast<Eigen::Index>(D) * D;
    Matrix composite = Matrix::Identity(d2, d2);
    for (const auto& b : blocks_) {
        Matrix lifted;
        if (b.kind == ScheduleBlock::Kind::unitary)
            lifted = Eigen::kroneckerProduct(b.matrix.conjugate(), b.matrix);
        else
            lifted = embed_superoperator(b.matrix, b.acts_on, layout_);
        composite = lifted * composite;
    }
    return composite;
}

}  // namespace qsync
