#include "spectraljacobi/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace spectraljacobi {

void BlockRecurrence::validate(int upto) const {
    if (N < 1) throw std::domain_error("BlockRecurrence: N must be >= 1");
    if (M0.rows() != N || M0.cols() != N)
        throw std::domain_error("BlockRecurrence: M0 has wrong dimensions");
    if ((M0 - M0.adjoint()).norm() > 1e-12 * std::max(1.0, M0.norm()))
        throw std::domain_error("BlockRecurrence: M0 not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M0, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("BlockRecurrence: M0 not positive definite");
    for (int n = 0; n < upto; ++n) {
        const Eigen::MatrixXcd An = A(n);
        const Eigen::MatrixXcd Bn = B(n);
        if ((Bn - Bn.adjoint()).norm() > 1e-12 * std::max(1.0, Bn.norm()))
            throw std::domain_error("BlockRecurrence: B(" + std::to_string(n) + ") not Hermitian");
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(An);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        if (!(smin > 1e-12 * smax) || smax == 0.0)
            throw std::domain_error("BlockRecurrence: A(" + std::to_string(n) + ") singular");
    }
}

void DiscreteMeasure::validate() const {
    if (nodes.size() != weights.size())
        throw std::domain_error("DiscreteMeasure: nodes/weights size mismatch");
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
        if (!(weights[i] > 0.0))
            throw std::domain_error("DiscreteMeasure: nonpositive weight");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw std::domain_error("DiscreteMeasure: nodes not strictly increasing");
    }
    const double sum = weights.sum();
    if (std::abs(sum - total_mass) > 1e-12 * std::max(1.0, std::abs(total_mass)))
        throw std::domain_error("DiscreteMeasure: weights do not sum to total mass");
}

Eigen::MatrixXcd MatrixMeasure::moment(int k) const {
    const int N = dim();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t j = 0; j < nodes.size(); ++j)
        M += std::pow(nodes[j], k) * masses[j];
    return M;
}

void MatrixMeasure::validate() const {
    if (nodes.size() != masses.size())
        throw std::domain_error("MatrixMeasure: nodes/masses size mismatch");
    double trace_total = 0.0;
    for (const auto& m : masses) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, m.norm()))
            throw std::domain_error("MatrixMeasure: mass not PSD");
        trace_total += m.real().trace();
    }
    if (!(trace_total > 0.0))
        throw std::domain_error("MatrixMeasure: total mass has nonpositive trace");
}

}  // namespace spectraljacobi
