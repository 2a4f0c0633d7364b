#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string_view>

namespace qsync {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::string_view kVersion = "0.1.0";

/// Thrown when a computation produces non-finite values or leaves the
/// numerical tolerances of the state/map contracts.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tolerances shared across the library.
namespace tol {
inline constexpr double hermiticity = 1e-10;   // max entrywise |m - m†|
inline constexpr double trace_one = 1e-9;
inline constexpr double positivity = -1e-9;    // smallest admissible eigenvalue
inline constexpr double unit_norm = 1e-12;
inline constexpr double unitarity = 1e-10;     // max entrywise |U†U - I|
inline constexpr double trace_preserving = 1e-9;
inline constexpr double branch_weight = 1e-12; // below this a measurement branch is degenerate
}  // namespace tol

inline bool is_finite(const Matrix& m) { return m.allFinite(); }

inline bool is_hermitian(const Matrix& m, double tolerance = tol::hermiticity) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace qsync
