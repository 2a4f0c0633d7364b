#pragma once

#include <string_view>
#include <vector>

#include "qsync/layout.hpp"
#include "qsync/types.hpp"

namespace qsync {

struct BosonicOps {
    Matrix a;      // annihilation, a|k> = sqrt(k)|k-1>
    Matrix a_dag;  // creation
    Matrix n;      // number operator, diag(0..n_fock-1)
};

/// Ladder operators truncated to the first n_fock Fock states.
/// Note the truncation artifact: [a, a†] = I except the bottom-right entry.
BosonicOps bosonic_ops(int n_fock);

struct PauliOps {
    Matrix sx, sy, sz;
    Matrix plus;   // (sx + i sy)/2, maps |g> -> |e>
    Matrix minus;  // (sx - i sy)/2
};

/// Standard 2x2 Pauli matrices with basis order (|e>, |g>), so sz|e> = +|e>.
PauliOps pauli_ops();

// Qubit kets in the (|e>, |g>) basis order.
Vector excited_ket();
Vector ground_ket();
Vector plus_ket();   // (|e> + |g>)/sqrt(2), sx eigenvalue +1
Vector minus_ket();  // (|e> - |g>)/sqrt(2), sx eigenvalue -1

/// I ⊗ ... ⊗ op ⊗ ... ⊗ I with op on the named slot, factor order per layout.
Matrix embed(const Matrix& local_op, std::string_view slot, const HilbertLayout& layout);

/// Lift a superoperator acting on a subset of factors to the full D²×D² space.
/// The local superoperator uses column-major vectorization over the subset
/// factors taken in layout order.
Matrix embed_superoperator(const Matrix& local_superop, const std::vector<std::string>& acts_on,
                           const HilbertLayout& layout);

/// Apply a superoperator on a subset of factors to a full density matrix
/// without forming the lifted D²×D² matrix.
Matrix apply_local_superoperator(const Matrix& rho, const Matrix& local_superop,
                                 const std::vector<std::string>& acts_on,
                                 const HilbertLayout& layout);

}  // namespace qsync
