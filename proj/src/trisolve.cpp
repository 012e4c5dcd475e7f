#include "spectraljacobi/trisolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace spectraljacobi::trisolve {

void SymTridiag::validate() const {
    if (diag.size() < 1) throw std::domain_error("SymTridiag: need M >= 1");
    if (offdiag.size() != diag.size() - 1)
        throw std::domain_error("SymTridiag: offdiag must have length M-1");
    for (Eigen::Index i = 0; i < offdiag.size(); ++i)
        if (!(offdiag[i] > 0.0))
            throw std::domain_error("SymTridiag: offdiag entry " + std::to_string(i) +
                                    " not strictly positive");
}

void BlockTridiag::validate() const {
    if (diag_blocks.empty()) throw std::domain_error("BlockTridiag: need M >= 1");
    if (off_blocks.size() + 1 != diag_blocks.size())
        throw std::domain_error("BlockTridiag: off blocks must have length M-1");
    for (std::size_t i = 0; i < diag_blocks.size(); ++i) {
        const auto& D = diag_blocks[i];
        if ((D - D.adjoint()).norm() > 1e-12 * std::max(1.0, D.norm()))
            throw std::domain_error("BlockTridiag: diagonal block " + std::to_string(i) +
                                    " not Hermitian");
    }
    for (std::size_t i = 0; i < off_blocks.size(); ++i) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(off_blocks[i]);
        const double smax = svd.singularValues().maxCoeff();
        if (smax == 0.0 || !(svd.singularValues().minCoeff() > 1e-12 * smax))
            throw std::domain_error("BlockTridiag: off block " + std::to_string(i) + " singular");
    }
}

EigenDecomposition eigh_tridiagonal(const SymTridiag& t) {
    t.validate();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(t.diag, t.offdiag, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigh_tridiagonal: QL iteration failed to converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

BlockEigenDecomposition eigh_block_tridiagonal(const BlockTridiag& t) {
    t.validate();
    const int M = static_cast<int>(t.diag_blocks.size());
    const int N = static_cast<int>(t.diag_blocks.front().rows());
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(N * M, N * M);
    for (int n = 0; n < M; ++n) {
        J.block(n * N, n * N, N, N) = t.diag_blocks[n];
        if (n + 1 < M) {
            J.block(n * N, (n + 1) * N, N, N) = t.off_blocks[n];
            J.block((n + 1) * N, n * N, N, N) = t.off_blocks[n].adjoint();
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigh_block_tridiagonal: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

DiscreteMeasure gauss_quadrature(const RecurrenceCoeffs& c, int M, double m0) {
    if (M < 1) throw std::domain_error("gauss_quadrature: need M >= 1");
    if (!(m0 > 0.0)) throw std::domain_error("gauss_quadrature: need m0 > 0");
    SymTridiag t;
    t.diag.resize(M);
    t.offdiag.resize(M - 1);
    for (int k = 0; k < M; ++k) t.diag[k] = c.b(k);
    for (int k = 0; k + 1 < M; ++k) t.offdiag[k] = c.a(k);
    const EigenDecomposition ed = eigh_tridiagonal(t);
    DiscreteMeasure mu;
    mu.nodes = ed.values;
    mu.weights.resize(M);
    // The squared first eigenvector component equals the Christoffel value
    // 1 / sum_k p_k(x_j)^2; evaluating it through the recurrence keeps full
    // relative accuracy even when two nodes nearly coincide and the computed
    // eigenvector components degrade.
    for (int j = 0; j < M; ++j) {
        const double x = mu.nodes[j];
        double pm1 = 0.0, p = 1.0, sum = 0.0;
        for (int k = 0; k < M; ++k) {
            sum += p * p;
            const double next = ((x - t.diag[k]) * p - (k > 0 ? t.offdiag[k - 1] : 0.0) * pm1) /
                                (k + 1 < M ? t.offdiag[k] : 1.0);
            pm1 = p;
            p = next;
        }
        mu.weights[j] = m0 / sum;
    }
    mu.total_mass = mu.weights.sum();
    return mu;
}

DiscreteMeasure gauss_quadrature(const RecurrenceCoeffs& c, int M) {
    return gauss_quadrature(c, M, c.m0);
}

namespace {

Eigen::MatrixXcd pd_sqrt(const Eigen::MatrixXcd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    Eigen::VectorXd d = es.eigenvalues().cwiseMax(1e-13);
    return es.eigenvectors() * d.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

MatrixMeasure block_quadrature(const BlockRecurrence& b, int M) {
    if (M < 1) throw std::domain_error("block_quadrature: need M >= 1");
    b.validate(M);

    // Scalar specialization delegates to gauss_quadrature so the N=1 results
    // agree bit for bit.
    bool scalar_positive = (b.N == 1) && b.M0(0, 0).imag() == 0.0;
    if (scalar_positive) {
        for (int n = 0; n < M; ++n) {
            const Complex an = b.A(n)(0, 0);
            const Complex bn = b.B(n)(0, 0);
            if (an.imag() != 0.0 || an.real() <= 0.0 || bn.imag() != 0.0) {
                scalar_positive = false;
                break;
            }
        }
    }
    if (scalar_positive) {
        RecurrenceCoeffs c{[&b](int n) { return b.A(n)(0, 0).real(); },
                           [&b](int n) { return b.B(n)(0, 0).real(); },
                           "block-scalar",
                           b.M0(0, 0).real()};
        const DiscreteMeasure mu = gauss_quadrature(c, M, b.M0(0, 0).real());
        MatrixMeasure mm;
        mm.nodes.assign(mu.nodes.data(), mu.nodes.data() + mu.nodes.size());
        for (Eigen::Index j = 0; j < mu.weights.size(); ++j) {
            Eigen::MatrixXcd w(1, 1);
            w(0, 0) = mu.weights[j];
            mm.masses.push_back(w);
        }
        return mm;
    }

    BlockTridiag t;
    for (int n = 0; n < M; ++n) {
        t.diag_blocks.push_back(b.B(n));
        if (n + 1 < M) t.off_blocks.push_back(b.A(n));
    }
    const BlockEigenDecomposition ed = eigh_block_tridiagonal(t);
    const Eigen::MatrixXcd root = pd_sqrt(b.M0);
    const int N = b.N;
    const int total = N * M;
    const double spectral_radius =
        std::max(std::abs(ed.values[0]), std::abs(ed.values[total - 1]));
    const double cluster_tol = 1e-10 * std::max(spectral_radius, 1e-300);

    MatrixMeasure mm;
    int j = 0;
    while (j < total) {
        int k = j;
        Eigen::MatrixXcd accum = Eigen::MatrixXcd::Zero(N, N);
        double node = 0.0;
        // Accumulate rank-one contributions over the eigenvalue cluster.
        while (k < total && ed.values[k] - ed.values[j] <= cluster_tol) {
            const Eigen::VectorXcd top = ed.vectors.block(0, k, N, 1);
            accum += top * top.adjoint();
            node += ed.values[k];
            ++k;
        }
        node /= (k - j);
        mm.nodes.push_back(node);
        mm.masses.push_back(root * accum * root);
        j = k;
    }
    return mm;
}

double orthonormality_defect(const DiscreteMeasure& mu, const RecurrenceCoeffs& c, int nmax) {
    const int npts = static_cast<int>(mu.nodes.size());
    Eigen::MatrixXd V(nmax, npts);  // V(n, j) = p_n(x_j)
    for (int j = 0; j < npts; ++j) {
        const double x = mu.nodes[j];
        double pm1 = 0.0, p = 1.0;
        for (int k = 0; k < nmax; ++k) {
            V(k, j) = p;
            const double ak = c.a(k);
            const double next = ((x - c.b(k)) * p - (k > 0 ? c.a(k - 1) : 0.0) * pm1) / ak;
            pm1 = p;
            p = next;
        }
    }
    const Eigen::MatrixXd G =
        V * (mu.weights / mu.total_mass).asDiagonal() * V.transpose();
    return (G - Eigen::MatrixXd::Identity(nmax, nmax)).cwiseAbs().maxCoeff();
}

double block_orthonormality_defect(const MatrixMeasure& mu, const BlockRecurrence& b, int nmax) {
    const int N = b.N;
    double worst = 0.0;
    std::vector<std::vector<Eigen::MatrixXcd>> values;  // per node: P_0..P_{nmax-1}
    for (std::size_t j = 0; j < mu.nodes.size(); ++j) {
        std::vector<Eigen::MatrixXcd> P;
        Eigen::MatrixXcd pm1 = Eigen::MatrixXcd::Zero(N, N);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.M0);
        Eigen::MatrixXcd p = es.eigenvectors() *
                             es.eigenvalues().cwiseMax(1e-13).cwiseSqrt().cwiseInverse().asDiagonal() *
                             es.eigenvectors().adjoint();
        for (int k = 0; k < nmax; ++k) {
            P.push_back(p);
            Eigen::MatrixXcd next = (mu.nodes[j] * p - b.B(k) * p -
                                     (k > 0 ? Eigen::MatrixXcd(b.A(k - 1).adjoint() * pm1)
                                            : Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(N, N))));
            next = b.A(k).partialPivLu().solve(next);
            pm1 = p;
            p = next;
        }
        values.push_back(std::move(P));
    }
    for (int n = 0; n < nmax; ++n)
        for (int m = 0; m <= n; ++m) {
            Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N, N);
            for (std::size_t j = 0; j < mu.nodes.size(); ++j)
                G += values[j][n] * mu.masses[j] * values[j][m].adjoint();
            if (n == m) G -= Eigen::MatrixXcd::Identity(N, N);
            worst = std::max(worst, G.cwiseAbs().maxCoeff());
        }
    return worst;
}

double moment_defect(const RecurrenceCoeffs& c, int M, int k) {
    const DiscreteMeasure mu = gauss_quadrature(c, M, c.m0);
    double quad = 0.0;
    for (Eigen::Index j = 0; j < mu.nodes.size(); ++j)
        quad += mu.weights[j] * std::pow(mu.nodes[j], k);

    // Hankel moment from the recurrence: m0 <e0, J^k e0> on the (k+1)-truncation.
    const int dim = k + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        J(i, i) = c.b(i);
        if (i + 1 < dim) {
            J(i, i + 1) = c.a(i);
            J(i + 1, i) = c.a(i);
        }
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v[0] = 1.0;
    for (int i = 0; i < k; ++i) v = J * v;
    const double hankel = c.m0 * v[0];
    return std::abs(quad - hankel) / std::max(1.0, std::abs(hankel));
}

}  // namespace spectraljacobi::trisolve
