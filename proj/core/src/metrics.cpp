#include "qsync/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace qsync {

Spectrum hermitian_spectrum(const Matrix& m) {
    if (!is_hermitian(m)) throw std::invalid_argument("hermitian_spectrum: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    Spectrum s;
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return s;
}

Spectrum density_spectrum(const DensityMatrix& rho) {
    Spectrum s = hermitian_spectrum(hermitize(rho.matrix()));
    const double sum = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0);
    if (std::abs(sum - 1.0) > tol::trace_one)
        throw NumericError("density_spectrum: eigenvalues sum to " + std::to_string(sum));
    for (double v : s.eigenvalues)
        if (v < tol::positivity || v > 1.0 + tol::trace_one)
            throw NumericError("density_spectrum: eigenvalue " + std::to_string(v) + " out of range");
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double entropy = 0.0;
    for (double lambda : density_spectrum(rho).eigenvalues) {
        if (lambda <= 0.0) continue;  // clamp, 0 ln 0 = 0
        entropy -= lambda * std::log(lambda);
    }
    return entropy;
}

double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& part_a,
                          const std::vector<std::string>& part_e) {
    std::set<std::string> sa(part_a.begin(), part_a.end());
    for (const auto& label : part_e)
        if (sa.count(label))
            throw std::invalid_argument("mutual_information: partitions overlap on '" + label + "'");

    std::vector<std::string> joint = part_a;
    joint.insert(joint.end(), part_e.begin(), part_e.end());

    const double s_a = von_neumann_entropy(partial_trace(rho, part_a));
    const double s_e = von_neumann_entropy(partial_trace(rho, part_e));
    const double s_ae = von_neumann_entropy(partial_trace(rho, joint));
    const double mi = s_a + s_e - s_ae;
    if (mi < -tol::trace_one)
        throw NumericError("mutual_information: negative value " + std::to_string(mi));
    return std::max(mi, 0.0);
}

namespace {

// Eigenvalues below this relative cutoff are numerically indistinguishable
// from zero; taking their square root would inject O(sqrt(eps)) noise.
double noise_floor(const Eigen::VectorXd& vals) {
    const double scale = vals.cwiseAbs().maxCoeff();
    return static_cast<double>(vals.size()) * std::numeric_limits<double>::epsilon() * scale;
}

// Hermitian square root with eigenvalue clamping at 0.
Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    Eigen::VectorXd vals = es.eigenvalues();
    const double floor = noise_floor(vals);
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < tol::positivity) throw NumericError("fidelity: input not PSD within tolerance");
        vals(i) = vals(i) <= floor ? 0.0 : std::sqrt(vals(i));
    }
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.layout() != sigma.layout()) throw std::invalid_argument("fidelity: layout mismatch");
    const Matrix sr = psd_sqrt(rho.matrix());
    const Matrix inner = sr * sigma.matrix() * sr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(inner), Eigen::EigenvaluesOnly);
    const double floor = noise_floor(es.eigenvalues());
    double tr_sqrt = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()(i);
        if (v > floor) tr_sqrt += std::sqrt(v);
    }
    const double f = tr_sqrt * tr_sqrt;
    if (f > 1.0 + 1e-8) throw NumericError("fidelity: value " + std::to_string(f) + " exceeds 1");
    return std::min(f, 1.0);
}

double expectation(const DensityMatrix& rho, const Matrix& op) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim())
        throw std::invalid_argument("expectation: operator dim mismatch");
    if (!is_hermitian(op)) throw std::invalid_argument("expectation: operator not Hermitian");
    const Complex val = (op * rho.matrix()).trace();
    if (std::abs(val.imag()) > 1e-9)
        throw NumericError("expectation: imaginary residue " + std::to_string(val.imag()));
    return val.real();
}

double trace_distance_raw(const Matrix& a, const Matrix& b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.layout() != sigma.layout()) throw std::invalid_argument("trace_distance: layout mismatch");
    return trace_distance_raw(rho.matrix(), sigma.matrix());
}

}  // namespace qsync
