#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spectraljacobi {

using Complex = std::complex<double>;

/// Scalar three-term coefficient stream indexed by N.
/// Generates orthonormal polynomials via
///   x p_k = a_k p_{k+1} + b_k p_k + a_{k-1} p_{k-1},  p_0 = 1,
/// orthonormal with respect to mu/m0 where mu has total mass m0.
struct RecurrenceCoeffs {
    std::function<double(int)> a;  // a_n > 0
    std::function<double(int)> b;  // b_n real
    std::string label;
    double m0 = 1.0;
};

/// Symmetric three-term coefficient stream indexed by Z:
///   L e_l = a_l e_{l+1} + b_l e_l + a_{l-1} e_{l-1}.
struct BiInfiniteCoeffs {
    std::function<double(int)> a;  // a_l > 0
    std::function<double(int)> b;
    bool decays_both_ways = false;  // a_l, b_l -> 0 as l -> +-inf
};

/// N x N block three-term stream: z P_n = A_n P_{n+1} + B_n P_n + A_{n-1}^* P_{n-1},
/// P_0 = M0^{-1/2}. A_n invertible, B_n Hermitian, M0 positive definite.
struct BlockRecurrence {
    int N = 1;
    std::function<Eigen::MatrixXcd(int)> A;
    std::function<Eigen::MatrixXcd(int)> B;
    Eigen::MatrixXcd M0;

    /// Throws std::domain_error if A(n) is numerically singular or B(n) is not
    /// Hermitian within 1e-12, for n < upto.
    void validate(int upto) const;
};

struct DiscreteMeasure {
    Eigen::VectorXd nodes;    // strictly increasing
    Eigen::VectorXd weights;  // > 0
    double total_mass = 0.0;

    void validate() const;
};

struct MatrixMeasure {
    std::vector<double> nodes;
    std::vector<Eigen::MatrixXcd> masses;  // PSD Hermitian

    int dim() const { return masses.empty() ? 0 : static_cast<int>(masses.front().rows()); }
    Eigen::MatrixXcd moment(int k) const;
    void validate() const;
};

}  // namespace spectraljacobi
