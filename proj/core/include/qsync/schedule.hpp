#pragma once

#include <string>
#include <vector>

#include "qsync/layout.hpp"
#include "qsync/states.hpp"
#include "qsync/types.hpp"

namespace qsync {

/// One block of a Trotter step. Unitary blocks store the full-dimension
/// matrix and act as U rho U†. Dissipative blocks store a CPTP superoperator
/// on the acts_on subspace (column-major vec, factors in layout order).
struct ScheduleBlock {
    enum class Kind { unitary, dissipative };

    Kind kind = Kind::unitary;
    Matrix matrix;
    std::vector<std::string> acts_on;
    double duration = 0.0;
    std::string name;
};

/// Ordered block sequence forming one Trotter step. Each block implements its
/// generator for the full step duration, matching the exponents of the block
/// decomposition.
class Schedule {
public:
    Schedule(std::vector<ScheduleBlock> blocks, double step_duration, HilbertLayout layout);

    const std::vector<ScheduleBlock>& blocks() const { return blocks_; }
    double step_duration() const { return step_duration_; }
    const HilbertLayout& layout() const { return layout_; }

    /// Apply every block in order; no validation of the output.
    Matrix apply_raw(const Matrix& rho) const;

    /// Apply and re-validate the result (trace, hermiticity, positivity).
    DensityMatrix apply(const DensityMatrix& rho) const;

    /// Full D²×D² matrix of the composite step (tests and error analysis;
    /// expensive for large layouts).
    Matrix to_superoperator() const;

private:
    std::vector<ScheduleBlock> blocks_;
    double step_duration_ = 0.0;
    HilbertLayout layout_;
};

}  // namespace qsync
