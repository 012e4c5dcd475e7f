#pragma once

#include "spectraljacobi/types.hpp"

namespace spectraljacobi::mvop {

/// First- and second-kind block values P_0..P_n, Q_0..Q_n at a point.
/// P_0 = M0^{-1/2}, Q_0 = 0, Q_1 = A_0^{-1} M0^{1/2}.
struct MatrixPolyPair {
    std::vector<Eigen::MatrixXcd> P;
    std::vector<Eigen::MatrixXcd> Q;
};

MatrixPolyPair eval_block_pair(const BlockRecurrence& b, int n, Complex z);

/// (defect1, defect2) with
///   defect1 = || Q_k P*_{k-1} - P_k Q*_{k-1} - A_{k-1}^{-1} ||
///   defect2 = || Q_k P_k* - P_k Q_k* ||
/// where P*(z) = (P(conj z))^adjoint.
std::pair<double, double> liouville_ostrogradsky_defect(const BlockRecurrence& b, int k, Complex z);

/// -P_n(z)^{-1} Q_n(z), Im z != 0.
Eigen::MatrixXcd mv_markov(const BlockRecurrence& b, Complex z, int n);

/// Matrix square roots of positive-definite Hermitian matrices, eigenvalue
/// floor 1e-13 (positive-square-root gauge).
Eigen::MatrixXcd sqrt_pd(const Eigen::MatrixXcd& M);
Eigen::MatrixXcd inv_sqrt_pd(const Eigen::MatrixXcd& M);

/// Matrix-valued Gegenbauer family of size 2l+1 (Example data: LDU weight,
/// diagonal squared norms H_n, monic recurrence matrices B_n, C_n).
class GegenbauerFamily {
  public:
    GegenbauerFamily(double ell, double nu);

    int size() const { return two_ell_ + 1; }
    double ell() const { return 0.5 * two_ell_; }
    double nu() const { return nu_; }

    double t(int k) const;
    Eigen::MatrixXd L(double x) const;          // unipotent lower triangular
    Eigen::MatrixXd W(double x) const;          // full weight, x in (-1,1)
    Eigen::MatrixXd W_reduced(double x) const;  // W / (1-x^2)^{nu-1/2}, polynomial
    Eigen::MatrixXd H(int n) const;             // diagonal positive
    Eigen::MatrixXd monic_B(int n) const;
    Eigen::MatrixXd monic_C(int n) const;

    /// Values of the monic polynomials P_0..P_n at x.
    std::vector<Eigen::MatrixXd> monic_values(int n, double x) const;

    /// Orthonormal block recurrence: A_n = H_n^{-1/2} H_{n+1}^{1/2},
    /// B_n = H_n^{-1/2} B_n^monic H_n^{1/2}, M0 = H_0.
    BlockRecurrence orthonormal() const;

    /// Moments int x^k W(x) dx by Gauss-Jacobi quadrature, exact degree.
    std::vector<Eigen::MatrixXcd> moments(int K) const;

  private:
    int two_ell_;
    double nu_;
};

GegenbauerFamily gegenbauer(double ell, double nu);

struct WeightSupport {
    int d;                // dim Ran W(x)
    Eigen::MatrixXcd J;   // orthogonal projector onto Ran W(x)
};

/// Rank counted above 1e-10 * trace. Throws std::invalid_argument if W has an
/// eigenvalue below -1e-12 * trace scale.
WeightSupport weight_support(const Eigen::MatrixXcd& Wx);

struct CommutantResult {
    int dim_A = 0;            // complex dimension of {T : T M_k = M_k T}
    int dim_Acal = 0;         // real dimension of {T : T M_k = M_k T*}
    std::vector<Eigen::MatrixXcd> A_basis;
    std::vector<Eigen::MatrixXcd> Acal_basis;
    bool star_invariant = false;  // Acal closed under adjoint
    bool stabilized = false;      // dimensions unchanged for 3 consecutive moments
    int moments_used = 0;
    bool reducible = false;       // dim_Acal > 1
};

CommutantResult commutant(const std::vector<Eigen::MatrixXcd>& moments);
CommutantResult commutant(const MatrixMeasure& mm);

struct CarlemanHint {
    std::vector<double> partial_sums;  // of ||A_n||^{-1}
    double growth_exponent;            // fitted slope of log ||A_n|| vs log n
    bool divergent;                    // heuristic: sum diverges => determinacy hint
};

CarlemanHint carleman_hint(const BlockRecurrence& b, int K);

/// Monic matrix polynomial (coefficient list, ascending degree) and its Gram matrix.
struct MonicPoly {
    std::vector<Eigen::MatrixXcd> coeffs;
    Eigen::MatrixXcd gram;  // <R_n, R_n>, positive definite

    Eigen::MatrixXcd eval(Complex x) const;
};

/// Gram-Schmidt by moments: R_n = x^n I + sum_{m<n} C_{n,m} R_m with
/// C_{n,m} = -<x^n, R_m> <R_m, R_m>^{-1}. Throws std::domain_error naming the
/// order if an even moment through 2n is not positive definite.
MonicPoly monic_from_weight(const MatrixMeasure& mm, int n);
std::vector<MonicPoly> monic_family(const MatrixMeasure& mm, int nmax);

/// Monic recurrence coefficients extracted from the family:
/// x R_n = R_{n+1} + Bm_n R_n + Cm_n R_{n-1}.
struct MonicRecurrence {
    std::vector<Eigen::MatrixXcd> Bm, Cm;
};
MonicRecurrence monic_recurrence(const MatrixMeasure& mm, int nmax);

/// N=1 embedding of a scalar family.
BlockRecurrence scalar_embedding(const RecurrenceCoeffs& c);

/// l^2(Z) -> 2x2 folding: A_n = diag(a_n, a_{-n-2}), B_n = diag(b_n, b_{-n-1})
/// for n >= 1, B_0 = [[b_0, a_{-1}], [a_{-1}, b_{-1}]], M0 = I.
BlockRecurrence fold_l2z(const BiInfiniteCoeffs& c);

/// Max relative residual of the matrix Christoffel-Darboux identity
/// (x-y) sum_{k<n} P_k*(x) P_k(y) = P_n*(x) A*_{n-1} P_{n-1}(y) - P*_{n-1}(x) A_{n-1} P_n(y).
double matrix_cd_defect(const BlockRecurrence& b, int n, double x, double y);

}  // namespace spectraljacobi::mvop
