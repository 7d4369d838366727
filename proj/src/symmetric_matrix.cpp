#include "conichom/symmetric_matrix.hpp"

#include <algorithm>
#include <string>

#include "conichom/errors.hpp"

namespace conichom {

SymMatrix::SymMatrix(int dim) {
    if (dim < 0) throw std::invalid_argument("symmetric matrix: negative dimension");
    m_ = Eigen::MatrixXd::Zero(dim, dim);
}

SymMatrix::SymMatrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("symmetric matrix: not square");
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * scale) throw std::invalid_argument("symmetric matrix: input is not symmetric");
    m_ = 0.5 * (m + m.transpose());
}

void SymMatrix::set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
}

void SymMatrix::add(int i, int j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) = m_(i, j);
}

double inner(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    return a.mat().cwiseProduct(b.mat()).sum();
}

EigResult eig_sym(const SymMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.mat());
    if (solver.info() != Eigen::Success) throw NumericalError("eig_sym: iteration failed to converge");
    const int d = m.dim();
    EigResult result;
    result.values.resize(d);
    result.vectors.resize(d, d);
    for (int i = 0; i < d; ++i) {
        result.values[i] = solver.eigenvalues()[d - 1 - i];
        result.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
    }
    return result;
}

double min_eigenvalue(const SymMatrix& m) {
    if (m.dim() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.mat(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("min_eigenvalue: iteration failed to converge");
    return solver.eigenvalues()[0];
}

bool is_psd(const SymMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

bool is_dnn(const SymMatrix& m, double tol) {
    return m.min_entry() >= -tol && is_psd(m, tol);
}

SymMatrix cp_gram_certificate(const Eigen::MatrixXd& factor) {
    if (factor.size() > 0 && factor.minCoeff() < 0.0)
        throw std::invalid_argument("cp gram certificate: factor has negative entries");
    return SymMatrix(Eigen::MatrixXd(factor * factor.transpose()));
}

SymMatrix kron(const SymMatrix& a, const SymMatrix& b, int dim_cap) {
    const int da = a.dim(), db = b.dim();
    if (static_cast<long>(da) * db > dim_cap)
        throw CapabilityError("kron: result dimension " + std::to_string(static_cast<long>(da) * db) +
                              " exceeds cap " + std::to_string(dim_cap));
    Eigen::MatrixXd out(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a(i, j) * b.mat();
    return SymMatrix(std::move(out));
}

void validate_partition(const Partition& parts, int dim) {
    std::vector<char> seen(dim, 0);
    int covered = 0;
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("partition: empty part");
        for (int i : part) {
            if (i < 0 || i >= dim) throw std::invalid_argument("partition: index out of range");
            if (seen[i]) throw std::invalid_argument("partition: index repeated");
            seen[i] = 1;
            ++covered;
        }
    }
    if (covered != dim) throw std::invalid_argument("partition: does not cover all indices");
}

SymMatrix contract(const SymMatrix& m, const Partition& parts) {
    validate_partition(parts, m.dim());
    const int k = static_cast<int>(parts.size());
    SymMatrix out(k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            double s = 0.0;
            for (int a : parts[i])
                for (int b : parts[j]) s += m(a, b);
            out.set(i, j, s);
        }
    }
    return out;
}

Partition pair_block_partition(const VertexPairIndex& idx) {
    Partition parts(idx.nx);
    for (int x = 0; x < idx.nx; ++x) {
        parts[x].reserve(idx.ny);
        for (int y = 0; y < idx.ny; ++y) parts[x].push_back(idx.flat(x, y));
    }
    return parts;
}

SymMatrix principal_submatrix(const SymMatrix& m, const std::vector<int>& indices) {
    std::vector<char> seen(m.dim(), 0);
    for (int i : indices) {
        if (i < 0 || i >= m.dim()) throw std::invalid_argument("principal submatrix: index out of range");
        if (seen[i]) throw std::invalid_argument("principal submatrix: index repeated");
        seen[i] = 1;
    }
    const int k = static_cast<int>(indices.size());
    Eigen::MatrixXd out(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out(i, j) = m(indices[i], indices[j]);
    return SymMatrix(std::move(out));
}

SymMatrix permutation_conjugate(const SymMatrix& m, const std::vector<int>& perm) {
    const int d = m.dim();
    if (static_cast<int>(perm.size()) != d)
        throw std::invalid_argument("permutation conjugate: wrong permutation length");
    std::vector<char> seen(d, 0);
    for (int i : perm) {
        if (i < 0 || i >= d || seen[i]) throw std::invalid_argument("permutation conjugate: not a permutation");
        seen[i] = 1;
    }
    Eigen::MatrixXd out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = m(perm[i], perm[j]);
    return SymMatrix(std::move(out));
}

}  // namespace conichom
