#pragma once

#include "spectraljacobi/types.hpp"

namespace spectraljacobi::trisolve {

/// Symmetric tridiagonal matrix with strictly positive off-diagonal
/// (simple spectrum guaranteed).
struct SymTridiag {
    Eigen::VectorXd diag;     // length M >= 1
    Eigen::VectorXd offdiag;  // length M-1, entries > 0

    void validate() const;  // throws std::domain_error
};

/// Block tridiagonal with Hermitian diagonal blocks and invertible off blocks.
struct BlockTridiag {
    std::vector<Eigen::MatrixXcd> diag_blocks;  // length M
    std::vector<Eigen::MatrixXcd> off_blocks;   // length M-1; block (n, n+1)

    void validate() const;
};

struct EigenDecomposition {
    Eigen::VectorXd values;   // ascending, strictly increasing for SymTridiag
    Eigen::MatrixXd vectors;  // orthonormal columns
};

struct BlockEigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

/// Implicit-shift QL/QR on the tridiagonal form (Eigen computeFromTridiagonal).
/// Postcondition: values strictly increasing, ||T - V diag(w) V^T|| <= 1e-10 ||T||.
EigenDecomposition eigh_tridiagonal(const SymTridiag& t);

/// Dense Hermitian eigensolve of the expanded (N M) x (N M) matrix.
BlockEigenDecomposition eigh_block_tridiagonal(const BlockTridiag& t);

/// Golub-Welsch: nodes are eigenvalues of the M x M truncation of the Jacobi
/// matrix of c, weight_j = m0 * (first eigenvector component)^2. The result
/// integrates p_n p_m to m0 * delta_{nm} for n, m < M.
DiscreteMeasure gauss_quadrature(const RecurrenceCoeffs& c, int M, double m0);
DiscreteMeasure gauss_quadrature(const RecurrenceCoeffs& c, int M);  // m0 = c.m0

/// Discrete analogue of the block spectral decomposition: mass at lambda_j is
/// M0^{1/2} (sum of top-block outer products over the eigenvalue cluster) M0^{1/2}.
/// Eigenvalues within 1e-10 * spectral radius are treated as one node.
MatrixMeasure block_quadrature(const BlockRecurrence& b, int M);

/// max_{n,m < nmax} |integral p_n p_m dmu / m0 - delta_{nm}|.
double orthonormality_defect(const DiscreteMeasure& mu, const RecurrenceCoeffs& c, int nmax);

/// max_{n,m < nmax} entrywise |sum_j P_n(x_j) mass_j P_m(x_j)^* - delta_{nm} I|.
double block_orthonormality_defect(const MatrixMeasure& mu, const BlockRecurrence& b, int nmax);

/// Moment of the level-M quadrature minus the Hankel moment m0 <e0, J^k e0>
/// computed from the recurrence, relative to the latter's scale.
double moment_defect(const RecurrenceCoeffs& c, int M, int k);

}  // namespace spectraljacobi::trisolve
