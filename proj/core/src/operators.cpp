#include "qsync/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsync {

BosonicOps bosonic_ops(int n_fock) {
    if (n_fock < 2) throw std::invalid_argument("bosonic_ops: n_fock must be >= 2");
    BosonicOps ops;
    ops.a = Matrix::Zero(n_fock, n_fock);
    for (int k = 1; k < n_fock; ++k) ops.a(k - 1, k) = std::sqrt(static_cast<double>(k));
    ops.a_dag = ops.a.adjoint();
    ops.n = ops.a_dag * ops.a;
    return ops;
}

PauliOps pauli_ops() {
    PauliOps p;
    p.sx = Matrix::Zero(2, 2);
    p.sx << 0, 1, 1, 0;
    p.sy = Matrix::Zero(2, 2);
    p.sy << 0, Complex(0, -1), Complex(0, 1), 0;
    p.sz = Matrix::Zero(2, 2);
    p.sz << 1, 0, 0, -1;
    p.plus = 0.5 * (p.sx + Complex(0, 1) * p.sy);
    p.minus = 0.5 * (p.sx - Complex(0, 1) * p.sy);
    return p;
}

Vector excited_ket() {
    Vector v(2);
    v << 1, 0;
    return v;
}

Vector ground_ket() {
    Vector v(2);
    v << 0, 1;
    return v;
}

Vector plus_ket() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

Vector minus_ket() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return v;
}

Matrix embed(const Matrix& local_op, std::string_view slot, const HilbertLayout& layout) {
    const int pos = layout.index_of(slot);
    const int d = layout.factor(pos).dim;
    if (local_op.rows() != d || local_op.cols() != d)
        throw std::invalid_argument("embed: operator dim does not match slot '" + std::string(slot) + "'");

    IndexSplit split(layout, {pos});
    Matrix full = Matrix::Zero(layout.dim(), layout.dim());
    for (int r = 0; r < split.rest_dim(); ++r)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                full(split.fuse(i, r), split.fuse(j, r)) = local_op(i, j);
    return full;
}

namespace {

IndexSplit make_split(const HilbertLayout& layout, const std::vector<std::string>& acts_on) {
    if (acts_on.empty()) throw std::invalid_argument("acts_on must not be empty");
    std::vector<int> positions;
    positions.reserve(acts_on.size());
    for (const auto& label : acts_on) positions.push_back(layout.index_of(label));
    return IndexSplit(layout, std::move(positions));
}

}  // namespace

Matrix embed_superoperator(const Matrix& local_superop, const std::vector<std::string>& acts_on,
                           const HilbertLayout& layout) {
    IndexSplit split = make_split(layout, acts_on);
    const int ds = split.sel_dim();
    const int dr = split.rest_dim();
    const int D = layout.dim();
    if (local_superop.rows() != ds * ds || local_superop.cols() != ds * ds)
        throw std::invalid_argument("embed_superoperator: superoperator dim mismatch");

    // vec index of the full space: c*D + r (column-major).
    Matrix full = Matrix::Zero(static_cast<Eigen::Index>(D) * D, static_cast<Eigen::Index>(D) * D);
    for (int rr = 0; rr < dr; ++rr) {
        for (int cr = 0; cr < dr; ++cr) {
            for (int io = 0; io < ds; ++io)
                for (int jo = 0; jo < ds; ++jo)
                    for (int ii = 0; ii < ds; ++ii)
                        for (int ji = 0; ji < ds; ++ji) {
                            const Complex v = local_superop(jo * ds + io, ji * ds + ii);
                            if (v == Complex(0, 0)) continue;
                            const Eigen::Index row = static_cast<Eigen::Index>(split.fuse(jo, cr)) * D + split.fuse(io, rr);
                            const Eigen::Index col = static_cast<Eigen::Index>(split.fuse(ji, cr)) * D + split.fuse(ii, rr);
                            full(row, col) = v;
                        }
        }
    }
    return full;
}

Matrix apply_local_superoperator(const Matrix& rho, const Matrix& local_superop,
                                 const std::vector<std::string>& acts_on,
                                 const HilbertLayout& layout) {
    const int D = layout.dim();
    if (rho.rows() != D || rho.cols() != D)
        throw std::invalid_argument("apply_local_superoperator: state dim mismatch");
    IndexSplit split = make_split(layout, acts_on);
    const int ds = split.sel_dim();
    if (local_superop.rows() != ds * ds || local_superop.cols() != ds * ds)
        throw std::invalid_argument("apply_local_superoperator: superoperator dim mismatch");

    Matrix out = Matrix::Zero(D, D);
    Vector sub(ds * ds), res(ds * ds);
    for (int rr = 0; rr < split.rest_dim(); ++rr) {
        for (int cr = 0; cr < split.rest_dim(); ++cr) {
            for (int j = 0; j < ds; ++j)
                for (int i = 0; i < ds; ++i) sub(j * ds + i) = rho(split.fuse(i, rr), split.fuse(j, cr));
            res.noalias() = local_superop * sub;
            for (int j = 0; j < ds; ++j)
                for (int i = 0; i < ds; ++i) out(split.fuse(i, rr), split.fuse(j, cr)) = res(j * ds + i);
        }
    }
    return out;
}

}  // namespace qsync
