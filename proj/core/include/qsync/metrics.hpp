#pragma once

#include <string>
#include <vector>

#include "qsync/states.hpp"
#include "qsync/types.hpp"

namespace qsync {

/// Eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> eigenvalues;
};

Spectrum hermitian_spectrum(const Matrix& m);

/// Spectrum of a density matrix, validated against the state contract:
/// values in [-1e-9, 1+1e-9] and summing to 1 within 1e-9.
Spectrum density_spectrum(const DensityMatrix& rho);

/// -sum λ ln λ in nats, with 0 ln 0 = 0 and negatives clamped at 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho_A) + S(rho_E) - S(rho_AE); parts must be disjoint label sets.
/// Clamped at 0 from below (tolerance -1e-9).
double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& part_a,
                          const std::vector<std::string>& part_e);

/// Uhlmann fidelity, squared convention: (Tr sqrt(sqrt(rho) sigma sqrt(rho)))².
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Re Tr(op * rho) for a Hermitian observable; the imaginary residue must be
/// below 1e-9 or a NumericError is thrown.
double expectation(const DensityMatrix& rho, const Matrix& op);

/// (1/2)||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance_raw(const Matrix& a, const Matrix& b);

}  // namespace qsync
