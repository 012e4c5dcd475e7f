#include "spectraljacobi/mvop.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spectraljacobi/families.hpp"
#include "spectraljacobi/trisolve.hpp"

namespace spectraljacobi::mvop {

namespace {

double pochhammer(double x, int n) {
    double r = 1.0;
    for (int j = 0; j < n; ++j) r *= (x + j);
    return r;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// Scalar Gegenbauer C_n^{(nu)}(x) by recurrence.
double gegenbauer_scalar(int n, double nu, double x) {
    if (n == 0) return 1.0;
    double cm1 = 1.0, c = 2.0 * nu * x;
    for (int k = 2; k <= n; ++k) {
        const double next = (2.0 * x * (k + nu - 1.0) * c - (k + 2.0 * nu - 2.0) * cm1) / k;
        cm1 = c;
        c = next;
    }
    return c;
}

}  // namespace

Eigen::MatrixXcd sqrt_pd(const Eigen::MatrixXcd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    const Eigen::VectorXd d = es.eigenvalues().cwiseMax(1e-13);
    return es.eigenvectors() * d.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd inv_sqrt_pd(const Eigen::MatrixXcd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    const Eigen::VectorXd d = es.eigenvalues().cwiseMax(1e-13);
    return es.eigenvectors() * d.cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().adjoint();
}

MatrixPolyPair eval_block_pair(const BlockRecurrence& b, int n, Complex z) {
    if (n < 0) throw std::domain_error("eval_block_pair: need n >= 0");
    const int N = b.N;
    MatrixPolyPair out;
    out.P.reserve(n + 1);
    out.Q.reserve(n + 1);
    out.P.push_back(inv_sqrt_pd(b.M0));
    out.Q.push_back(Eigen::MatrixXcd::Zero(N, N));
    if (n == 0) return out;
    const Eigen::MatrixXcd A0 = b.A(0);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu0(A0);
    if (std::abs(lu0.determinant()) == 0.0)
        throw std::domain_error("eval_block_pair: A(0) singular");
    out.P.push_back(lu0.solve((z * Eigen::MatrixXcd::Identity(N, N) - b.B(0)) * out.P[0]));
    out.Q.push_back(lu0.solve(sqrt_pd(b.M0)));
    for (int k = 1; k < n; ++k) {
        const Eigen::MatrixXcd Ak = b.A(k);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Ak);
        if (std::abs(lu.determinant()) == 0.0)
            throw std::domain_error("eval_block_pair: A(" + std::to_string(k) + ") singular");
        const Eigen::MatrixXcd Akm1adj = b.A(k - 1).adjoint();
        const Eigen::MatrixXcd zB = z * Eigen::MatrixXcd::Identity(N, N) - b.B(k);
        out.P.push_back(lu.solve(zB * out.P[k] - Akm1adj * out.P[k - 1]));
        out.Q.push_back(lu.solve(zB * out.Q[k] - Akm1adj * out.Q[k - 1]));
    }
    return out;
}

std::pair<double, double> liouville_ostrogradsky_defect(const BlockRecurrence& b, int k,
                                                        Complex z) {
    if (k < 1) throw std::domain_error("liouville_ostrogradsky_defect: need k >= 1");
    const MatrixPolyPair at_z = eval_block_pair(b, k, z);
    const MatrixPolyPair at_zc = eval_block_pair(b, k, std::conj(z));
    auto star = [](const std::vector<Eigen::MatrixXcd>& v, int i) -> Eigen::MatrixXcd {
        return v[i].adjoint();
    };
    const Eigen::MatrixXcd lhs1 =
        at_z.Q[k] * star(at_zc.P, k - 1) - at_z.P[k] * star(at_zc.Q, k - 1);
    const Eigen::MatrixXcd Ainv = b.A(k - 1).partialPivLu().inverse();
    // Both defects are relative to the product scale; the polynomial values
    // grow exponentially in k and the identities live in the cancellation.
    const double scale1 =
        std::max({1.0, Ainv.norm(), at_z.Q[k].norm() * at_zc.P[k - 1].norm(),
                  at_z.P[k].norm() * at_zc.Q[k - 1].norm()});
    const Eigen::MatrixXcd lhs2 = at_z.Q[k] * star(at_zc.P, k) - at_z.P[k] * star(at_zc.Q, k);
    const double scale2 = std::max(
        {1.0, at_z.Q[k].norm() * at_zc.P[k].norm(), at_z.P[k].norm() * at_zc.Q[k].norm()});
    return {(lhs1 - Ainv).norm() / scale1, lhs2.norm() / scale2};
}

Eigen::MatrixXcd mv_markov(const BlockRecurrence& b, Complex z, int n) {
    if (z.imag() == 0.0) throw std::domain_error("mv_markov: need Im z != 0");
    const MatrixPolyPair pair = eval_block_pair(b, n, z);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(pair.P[n]);
    if (!lu.isInvertible())
        throw std::runtime_error("mv_markov: P_n(z) numerically singular off the real axis");
    return -lu.solve(pair.Q[n]);
}

// ------------------------------------------------------------ Gegenbauer

GegenbauerFamily::GegenbauerFamily(double ell, double nu) : nu_(nu) {
    const double doubled = 2.0 * ell;
    two_ell_ = static_cast<int>(std::lround(doubled));
    if (std::abs(doubled - two_ell_) > 1e-12 || two_ell_ < 0)
        throw std::domain_error("gegenbauer: ell must be a nonnegative half-integer");
    if (!(nu > 0.0)) throw std::domain_error("gegenbauer: nu must be positive");
}

double GegenbauerFamily::t(int k) const {
    const int l2 = two_ell_;
    return factorial(k) * pochhammer(nu_, k) / pochhammer(nu_ + 0.5, k) *
           pochhammer(2.0 * nu_ + l2, k) * (l2 + nu_) /
           (pochhammer(l2 - k + 1.0, k) * pochhammer(2.0 * nu_ + k - 1.0, k));
}

Eigen::MatrixXd GegenbauerFamily::L(double x) const {
    const int N = size();
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(N, N);
    for (int m = 1; m < N; ++m)
        for (int k = 0; k < m; ++k)
            M(m, k) = factorial(m) / (factorial(k) * pochhammer(2.0 * nu_ + 2.0 * k, m - k)) *
                      gegenbauer_scalar(m - k, nu_ + k, x);
    return M;
}

Eigen::MatrixXd GegenbauerFamily::W_reduced(double x) const {
    const int N = size();
    const Eigen::MatrixXd Lx = L(x);
    Eigen::VectorXd tk(N);
    for (int k = 0; k < N; ++k) tk[k] = t(k) * std::pow(1.0 - x * x, k);
    return Lx * tk.asDiagonal() * Lx.transpose();
}

Eigen::MatrixXd GegenbauerFamily::W(double x) const {
    return std::pow(1.0 - x * x, nu_ - 0.5) * W_reduced(x);
}

namespace {

// log (x)_n for x > 0; the entries of H_n combine Pochhammers that overflow
// individually near n ~ 90.
double lpoch(double x, int n) { return std::lgamma(x + n) - std::lgamma(x); }

}  // namespace

Eigen::MatrixXd GegenbauerFamily::H(int n) const {
    const int N = size();
    const int l2 = two_ell_;
    Eigen::MatrixXd Hn = Eigen::MatrixXd::Zero(N, N);
    const double log_common =
        0.5 * std::log(M_PI) + std::lgamma(nu_ + 0.5) - std::lgamma(nu_ + 1.0) +
        std::log(nu_ * (l2 + nu_ + n) / (nu_ + n)) + std::lgamma(n + 1.0) +
        lpoch(0.5 * l2 + 0.5 + nu_, n) + lpoch(l2 + nu_, n) + lpoch(0.5 * l2 + nu_, n) -
        lpoch(l2 + nu_ + 1.0, n) - lpoch(l2 + 2.0 * nu_ + n, n);
    for (int k = 0; k < N; ++k)
        Hn(k, k) = std::exp(log_common - lpoch(nu_ + k, n) - lpoch(l2 + nu_ - k, n) +
                            std::lgamma(k + 1.0) + std::lgamma(l2 - k + 1.0) +
                            lpoch(n + nu_ + 1.0, l2) - std::lgamma(l2 + 1.0) -
                            lpoch(n + nu_ + 1.0, k) - lpoch(n + nu_ + 1.0, l2 - k));
    return Hn;
}

Eigen::MatrixXd GegenbauerFamily::monic_B(int n) const {
    const int N = size();
    const int l2 = two_ell_;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
    for (int j = 1; j < N; ++j)
        B(j, j - 1) = j * (j + nu_ - 1.0) / (2.0 * (j + n + nu_ - 1.0) * (j + n + nu_));
    for (int j = 0; j + 1 < N; ++j)
        B(j, j + 1) = (l2 - j) * (l2 - j + nu_ - 1.0) /
                      (2.0 * (l2 - j + n + nu_ - 1.0) * (l2 + n - j + nu_));
    return B;
}

Eigen::MatrixXd GegenbauerFamily::monic_C(int n) const {
    const int N = size();
    const int l2 = two_ell_;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, N);
    for (int j = 0; j < N; ++j)
        C(j, j) = n * (n + nu_ - 1.0) * (l2 + n + nu_) * (l2 + n + 2.0 * nu_ - 1.0) /
                  (4.0 * (l2 + n + nu_ - j - 1.0) * (l2 + n + nu_ - j) * (j + n + nu_ - 1.0) *
                   (j + n + nu_));
    return C;
}

std::vector<Eigen::MatrixXd> GegenbauerFamily::monic_values(int n, double x) const {
    const int N = size();
    std::vector<Eigen::MatrixXd> P;
    P.push_back(Eigen::MatrixXd::Identity(N, N));
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXd next = x * P[k] - monic_B(k) * P[k];
        if (k >= 1) next -= monic_C(k) * P[k - 1];
        P.push_back(std::move(next));
    }
    return P;
}

BlockRecurrence GegenbauerFamily::orthonormal() const {
    const GegenbauerFamily fam = *this;
    BlockRecurrence b;
    b.N = size();
    b.M0 = fam.H(0).cast<Complex>();
    b.A = [fam](int n) -> Eigen::MatrixXcd {
        const Eigen::VectorXd hn = fam.H(n).diagonal();
        const Eigen::VectorXd hn1 = fam.H(n + 1).diagonal();
        return (hn.cwiseSqrt().cwiseInverse().asDiagonal() * Eigen::MatrixXd(
                    hn1.cwiseSqrt().asDiagonal()))
            .cast<Complex>();
    };
    b.B = [fam](int n) -> Eigen::MatrixXcd {
        const Eigen::VectorXd hn = fam.H(n).diagonal();
        return (hn.cwiseSqrt().cwiseInverse().asDiagonal() * fam.monic_B(n) *
                Eigen::MatrixXd(hn.cwiseSqrt().asDiagonal()))
            .cast<Complex>();
    };
    return b;
}

std::vector<Eigen::MatrixXcd> GegenbauerFamily::moments(int K) const {
    // Gauss-Jacobi rule against the (1-x^2)^{nu-1/2} envelope; the remaining
    // integrand x^k W_reduced(x) is polynomial of degree k + 4l.
    const int order = (K + 4 * two_ell_) / 2 + 4;
    const RecurrenceCoeffs gj = families::jacobi_unnormalized(nu_ - 0.5, nu_ - 0.5);
    const DiscreteMeasure rule = trisolve::gauss_quadrature(gj, order, gj.m0);
    std::vector<Eigen::MatrixXcd> moments;
    for (int k = 0; k <= K; ++k) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size(), size());
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j)
            M += rule.weights[j] * std::pow(rule.nodes[j], k) * W_reduced(rule.nodes[j]);
        moments.push_back(M.cast<Complex>());
    }
    return moments;
}

GegenbauerFamily gegenbauer(double ell, double nu) { return {ell, nu}; }

// ------------------------------------------------------------ weight support

WeightSupport weight_support(const Eigen::MatrixXcd& Wx) {
    const double scale = std::max(1e-300, Wx.real().trace());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Wx);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("weight_support: matrix is indefinite beyond tolerance");
    const double tol = 1e-10 * scale;
    WeightSupport ws;
    ws.d = 0;
    ws.J = Eigen::MatrixXcd::Zero(Wx.rows(), Wx.cols());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i] > tol) {
            const Eigen::VectorXcd v = es.eigenvectors().col(i);
            ws.J += v * v.adjoint();
            ++ws.d;
        }
    }
    return ws;
}

// ------------------------------------------------------------ commutant

namespace {

// Real-linear operator T -> T M - M T^{(*)} acting on (Re T, Im T) in R^{2N^2}.
Eigen::MatrixXd constraint_rows(const Eigen::MatrixXcd& M, bool star) {
    const int N = static_cast<int>(M.rows());
    const int dim = 2 * N * N;
    Eigen::MatrixXd rows(dim, dim);
    int col = 0;
    for (int part = 0; part < 2; ++part)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
                T(i, j) = (part == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
                const Eigen::MatrixXcd Tright = star ? Eigen::MatrixXcd(T.adjoint()) : T;
                const Eigen::MatrixXcd R = T * M - M * Tright;
                int row = 0;
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b) {
                        rows(row, col) = R(a, b).real();
                        rows(row + N * N, col) = R(a, b).imag();
                        ++row;
                    }
                ++col;
            }
    return rows;
}

std::vector<Eigen::MatrixXcd> nullspace_matrices(const Eigen::MatrixXd& S, int N) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeFullV);
    const double tol = 1e-9 * std::max(1.0, svd.singularValues().maxCoeff());
    std::vector<Eigen::MatrixXcd> basis;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()[i] < tol) {
            const Eigen::VectorXd v = svd.matrixV().col(i);
            Eigen::MatrixXcd T(N, N);
            int idx = 0;
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    T(a, b) = Complex(v[idx], v[N * N + idx]);
                    ++idx;
                }
            basis.push_back(T);
        }
    }
    return basis;
}

int solve_dim(const std::vector<Eigen::MatrixXcd>& moments, int upto, bool star,
              std::vector<Eigen::MatrixXcd>* basis_out) {
    const int N = static_cast<int>(moments.front().rows());
    Eigen::MatrixXd stacked(2 * N * N * upto, 2 * N * N);
    for (int k = 0; k < upto; ++k) {
        const double scale = std::max(1.0, moments[k].norm());
        stacked.middleRows(2 * N * N * k, 2 * N * N) = constraint_rows(moments[k] / scale, star);
    }
    const auto basis = nullspace_matrices(stacked, N);
    if (basis_out) *basis_out = basis;
    return static_cast<int>(basis.size());
}

}  // namespace

CommutantResult commutant(const std::vector<Eigen::MatrixXcd>& moments) {
    if (moments.size() < 3) throw std::invalid_argument("commutant: need at least 3 moments");
    const int N = static_cast<int>(moments.front().rows());
    const int K = static_cast<int>(moments.size());
    CommutantResult res;

    int stable_A = 0, stable_Acal = 0;
    int dimA_real = solve_dim(moments, 2, false, nullptr);
    int dimAcal = solve_dim(moments, 2, true, nullptr);
    int used = 2;
    for (int k = 3; k <= K; ++k) {
        const int dA = solve_dim(moments, k, false, nullptr);
        const int dAc = solve_dim(moments, k, true, nullptr);
        stable_A = (dA == dimA_real) ? stable_A + 1 : 0;
        stable_Acal = (dAc == dimAcal) ? stable_Acal + 1 : 0;
        dimA_real = dA;
        dimAcal = dAc;
        used = k;
        if (stable_A >= 3 && stable_Acal >= 3) break;
    }
    res.stabilized = (stable_A >= 3 && stable_Acal >= 3);
    res.moments_used = used;
    solve_dim(moments, used, false, &res.A_basis);
    solve_dim(moments, used, true, &res.Acal_basis);
    res.dim_A = dimA_real / 2;  // A is a complex subspace, closed under i*T
    res.dim_Acal = dimAcal;
    res.reducible = res.dim_Acal > 1;

    // Star invariance: every adjoint of a basis element stays in the span.
    res.star_invariant = true;
    if (!res.Acal_basis.empty()) {
        const int m = static_cast<int>(res.Acal_basis.size());
        Eigen::MatrixXd span(2 * N * N, m);
        for (int i = 0; i < m; ++i) {
            int idx = 0;
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    span(idx, i) = res.Acal_basis[i](a, b).real();
                    span(N * N + idx, i) = res.Acal_basis[i](a, b).imag();
                    ++idx;
                }
        }
        for (const auto& T : res.Acal_basis) {
            const Eigen::MatrixXcd Ts = T.adjoint();
            Eigen::VectorXd target(2 * N * N);
            int idx = 0;
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    target(idx) = Ts(a, b).real();
                    target(N * N + idx) = Ts(a, b).imag();
                    ++idx;
                }
            const Eigen::VectorXd coeff = span.colPivHouseholderQr().solve(target);
            if ((span * coeff - target).norm() > 1e-8 * std::max(1.0, target.norm())) {
                res.star_invariant = false;
                break;
            }
        }
    }
    return res;
}

CommutantResult commutant(const MatrixMeasure& mm) {
    const int K = std::max(3, 2 * mm.dim() * mm.dim() + 2);
    std::vector<Eigen::MatrixXcd> moments;
    for (int k = 0; k <= K; ++k) moments.push_back(mm.moment(k));
    return commutant(moments);
}

// ------------------------------------------------------------ Carleman hint

CarlemanHint carleman_hint(const BlockRecurrence& b, int K) {
    if (K < 1) throw std::domain_error("carleman_hint: need K >= 1");
    CarlemanHint hint;
    hint.partial_sums.reserve(K);
    std::vector<double> norms;
    double sum = 0.0;
    for (int n = 0; n < K; ++n) {
        const double norm = b.A(n).operatorNorm();
        norms.push_back(norm);
        sum += 1.0 / norm;
        hint.partial_sums.push_back(sum);
    }
    // Fit log ||A_n|| against n (exponential rate) and against log n (power),
    // over the upper half of the range.
    const int lo = std::max(1, K / 2), hi = K;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double tx = 0, txx = 0, txy = 0;
    for (int n = lo; n < hi; ++n) {
        const double y = std::log(norms[n]);
        sx += n;
        sy += y;
        sxx += double(n) * n;
        sxy += n * y;
        const double l = std::log(double(n));
        tx += l;
        txx += l * l;
        txy += l * y;
    }
    const int cnt = hi - lo;
    const double rate = (cnt * sxy - sx * sy) / std::max(1e-300, cnt * sxx - sx * sx);
    const double power = (cnt * txy - tx * sy) / std::max(1e-300, cnt * txx - tx * tx);
    hint.growth_exponent = power;
    // sum ||A_n||^{-1} diverges when the norms grow at most like n^p, p <= 1;
    // geometric growth makes it converge.
    hint.divergent = rate < 0.05 && power <= 1.1;
    return hint;
}

// ------------------------------------------------------------ monic construction

Eigen::MatrixXcd MonicPoly::eval(Complex x) const {
    const int N = static_cast<int>(coeffs.front().rows());
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(N, N);
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) v = v * x + coeffs[k];
    return v;
}

namespace {

Eigen::MatrixXcd measure_inner(const MatrixMeasure& mm, const MonicPoly& F, const MonicPoly& G) {
    const int N = mm.dim();
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t j = 0; j < mm.nodes.size(); ++j)
        S += F.eval(mm.nodes[j]) * mm.masses[j] * G.eval(mm.nodes[j]).adjoint();
    return S;
}

Eigen::MatrixXcd measure_inner_xn(const MatrixMeasure& mm, int n, const MonicPoly& G) {
    const int N = mm.dim();
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t j = 0; j < mm.nodes.size(); ++j)
        S += std::pow(mm.nodes[j], n) * mm.masses[j] * G.eval(mm.nodes[j]).adjoint();
    return S;
}

void require_even_moments_pd(const MatrixMeasure& mm, int n) {
    for (int k = 0; 2 * k <= 2 * n; ++k) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mm.moment(2 * k),
                                                           Eigen::EigenvaluesOnly);
        if (!(es.eigenvalues().minCoeff() > 0.0))
            throw std::domain_error("monic_from_weight: even moment of order " +
                                    std::to_string(2 * k) + " is not positive definite");
    }
}

}  // namespace

std::vector<MonicPoly> monic_family(const MatrixMeasure& mm, int nmax) {
    require_even_moments_pd(mm, nmax);
    const int N = mm.dim();
    std::vector<MonicPoly> fam;
    for (int n = 0; n <= nmax; ++n) {
        MonicPoly R;
        R.coeffs.assign(n + 1, Eigen::MatrixXcd::Zero(N, N));
        R.coeffs[n] = Eigen::MatrixXcd::Identity(N, N);
        for (int m = 0; m < n; ++m) {
            const Eigen::MatrixXcd C =
                -measure_inner_xn(mm, n, fam[m]) * fam[m].gram.inverse();
            for (int k = 0; k <= m; ++k) R.coeffs[k] += C * fam[m].coeffs[k];
        }
        R.gram = measure_inner(mm, R, R);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(R.gram, Eigen::EigenvaluesOnly);
        if (!(es.eigenvalues().minCoeff() > 0.0))
            throw std::domain_error("monic_from_weight: Gram matrix of degree " +
                                    std::to_string(n) + " not positive definite");
        fam.push_back(std::move(R));
    }
    return fam;
}

MonicPoly monic_from_weight(const MatrixMeasure& mm, int n) {
    return monic_family(mm, n).back();
}

MonicRecurrence monic_recurrence(const MatrixMeasure& mm, int nmax) {
    const auto fam = monic_family(mm, nmax + 1);
    MonicRecurrence rec;
    for (int n = 0; n <= nmax; ++n) {
        // x R_n = R_{n+1} + Bm_n R_n + Cm_n R_{n-1} with
        // Bm_n = <x R_n, R_n> <R_n,R_n>^{-1}, Cm_n = <x R_n, R_{n-1}> <R_{n-1},R_{n-1}>^{-1}.
        MonicPoly xRn;
        xRn.coeffs.assign(n + 2, Eigen::MatrixXcd::Zero(mm.dim(), mm.dim()));
        for (int k = 0; k <= n; ++k) xRn.coeffs[k + 1] = fam[n].coeffs[k];
        rec.Bm.push_back(measure_inner(mm, xRn, fam[n]) * fam[n].gram.inverse());
        if (n >= 1)
            rec.Cm.push_back(measure_inner(mm, xRn, fam[n - 1]) * fam[n - 1].gram.inverse());
        else
            rec.Cm.push_back(Eigen::MatrixXcd::Zero(mm.dim(), mm.dim()));
    }
    return rec;
}

// ------------------------------------------------------------ embeddings

BlockRecurrence scalar_embedding(const RecurrenceCoeffs& c) {
    BlockRecurrence b;
    b.N = 1;
    b.M0 = Eigen::MatrixXcd::Constant(1, 1, c.m0);
    b.A = [c](int n) { return Eigen::MatrixXcd::Constant(1, 1, c.a(n)); };
    b.B = [c](int n) { return Eigen::MatrixXcd::Constant(1, 1, c.b(n)); };
    return b;
}

BlockRecurrence fold_l2z(const BiInfiniteCoeffs& c) {
    BlockRecurrence b;
    b.N = 2;
    b.M0 = Eigen::MatrixXcd::Identity(2, 2);
    b.A = [c](int n) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
        A(0, 0) = c.a(n);
        A(1, 1) = c.a(-n - 2);
        return A;
    };
    b.B = [c](int n) {
        Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2, 2);
        if (n == 0) {
            B(0, 0) = c.b(0);
            B(1, 1) = c.b(-1);
            B(0, 1) = c.a(-1);
            B(1, 0) = c.a(-1);
        } else {
            B(0, 0) = c.b(n);
            B(1, 1) = c.b(-n - 1);
        }
        return B;
    };
    return b;
}

double matrix_cd_defect(const BlockRecurrence& b, int n, double x, double y) {
    const int N = b.N;
    const MatrixPolyPair px = eval_block_pair(b, n, x);
    const MatrixPolyPair py = eval_block_pair(b, n, y);
    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(N, N);
    for (int k = 0; k < n; ++k) lhs += px.P[k].adjoint() * py.P[k];
    lhs *= (x - y);
    const Eigen::MatrixXcd Anm1 = b.A(n - 1);
    const Eigen::MatrixXcd rhs =
        px.P[n].adjoint() * Anm1.adjoint() * py.P[n - 1] - px.P[n - 1].adjoint() * Anm1 * py.P[n];
    return (lhs - rhs).norm() / std::max(1.0, rhs.norm());
}

}  // namespace spectraljacobi::mvop
