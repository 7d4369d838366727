#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "conichom/graph.hpp"

namespace conichom {

// Dense real symmetric matrix. Entries (i,j) and (j,i) are kept bitwise equal;
// construction from a general matrix symmetrizes after checking the asymmetry
// is within rounding noise.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int dim);
    explicit SymMatrix(Eigen::MatrixXd m);

    int dim() const { return static_cast<int>(m_.rows()); }
    double operator()(int i, int j) const { return m_(i, j); }
    void set(int i, int j, double v);
    void add(int i, int j, double v);

    const Eigen::MatrixXd& mat() const { return m_; }

    double trace() const { return m_.trace(); }
    double sum() const { return m_.sum(); }
    double min_entry() const { return dim() == 0 ? 0.0 : m_.minCoeff(); }
    double frob_norm() const { return m_.norm(); }

    // Present when the matrix is indexed by ordered vertex pairs of a graph
    // pair (rows and columns both laid out per VertexPairIndex).
    std::optional<VertexPairIndex> pair_labels;

private:
    Eigen::MatrixXd m_;
};

double inner(const SymMatrix& a, const SymMatrix& b);

struct EigResult {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) for values[i]
};

// Deterministic symmetric eigendecomposition (tridiagonalization + implicit QR).
EigResult eig_sym(const SymMatrix& m);

double min_eigenvalue(const SymMatrix& m);

bool is_psd(const SymMatrix& m, double tol);

// PSD and entrywise nonnegative.
bool is_dnn(const SymMatrix& m, double tol);

// Gram matrix of the rows of an entrywise-nonnegative factor; the result is
// completely positive by construction. Negative factor entries are rejected.
SymMatrix cp_gram_certificate(const Eigen::MatrixXd& factor);

inline constexpr int kDefaultKronDimCap = 4096;

SymMatrix kron(const SymMatrix& a, const SymMatrix& b, int dim_cap = kDefaultKronDimCap);

// Partition of the index set 0..dim-1 into disjoint nonempty parts.
using Partition = std::vector<std::vector<int>>;

void validate_partition(const Partition& parts, int dim);

// N[i][j] = sum of M over part_i x part_j.
SymMatrix contract(const SymMatrix& m, const Partition& parts);

// Partition of 0..nx*ny-1 into the nx row blocks {x} x Y of a pair layout.
Partition pair_block_partition(const VertexPairIndex& idx);

SymMatrix principal_submatrix(const SymMatrix& m, const std::vector<int>& indices);

// N[i][j] = M[perm[i]][perm[j]] for a permutation of 0..dim-1.
SymMatrix permutation_conjugate(const SymMatrix& m, const std::vector<int>& perm);

}  // namespace conichom
