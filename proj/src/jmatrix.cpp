#include "spectraljacobi/jmatrix.hpp"

#include <cmath>

#include "spectraljacobi/families.hpp"

namespace spectraljacobi::jmatrix {

namespace {

double pochhammer(double x, int n) {
    double r = 1.0;
    for (int j = 0; j < n; ++j) r *= (x + j);
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r = r * (n - j) / (j + 1.0);
    return r;
}

// Classical Jacobi polynomial P_n^{(a,b)}(x) by forward recurrence.
double jacobi_poly(int n, double a, double b, double x) {
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * ((a + b + 2.0) * x + (a - b));
    for (int k = 2; k <= n; ++k) {
        const double k_ab = k * (a + b + k), ab2k = a + b + 2.0 * k;
        const double c1 = ab2k * (ab2k - 1.0) / (2.0 * k_ab);
        const double c2 = (ab2k - 1.0) * (b * b - a * a) / (2.0 * k_ab * (ab2k - 2.0));
        const double c3 = ab2k * (a + k - 1.0) * (b + k - 1.0) / (k_ab * (ab2k - 2.0));
        const double next = (c1 * x - c2) * p - c3 * pm1;
        pm1 = p;
        p = next;
    }
    return p;
}

// int P_n^2 (1-x)^a (1+x)^b dx over [-1,1].
double jacobi_h(int n, double a, double b) {
    return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(n + a + 1.0) +
                    std::lgamma(n + b + 1.0) - std::lgamma(n + a + b + 1.0) -
                    std::lgamma(n + 1.0)) /
           (2.0 * n + a + b + 1.0);
}

double jacobi_mass(double a, double b) {
    return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
}

// d^k/dx^k of P_n^{(a,b)} via the parameter-shift identity.
double jacobi_deriv(int n, double a, double b, double x, int order) {
    if (n - order < 0) return 0.0;
    double c = 1.0;
    for (int j = 0; j < order; ++j) c *= 0.5 * (n + a + b + 1.0 + j);
    return c * jacobi_poly(n - order, a + order, b + order, x);
}

// Lanczos approximation (g = 7, 9 terms); |Gamma(z)|^2 = exp(2 Re lgamma(z)).
Complex lgamma_complex(Complex z) {
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,
                                   -1259.1392167224028,  771.32342877765313,
                                   -176.61502916214059,  12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // Reflection: lgamma(z) = log(pi / sin(pi z)) - lgamma(1 - z).
        return std::log(M_PI / std::sin(M_PI * z)) - lgamma_complex(1.0 - z);
    }
    z -= 1.0;
    Complex x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + Complex(i, 0.0));
    const Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

// ---------------------------------------------------------------- Morse model

MorseModel morse_model(double b) {
    if (!(b > 0.0)) throw std::domain_error("morse_model: need b > 0");
    const double frac = b - 0.5;
    if (std::abs(frac - std::round(frac)) < 1e-8)
        throw std::domain_error("morse_model: b within 1e-8 of 1/2 + N is excluded");
    return {b, static_cast<int>(std::floor(b + 0.5))};
}

TridiagRow morse_tridiag(const MorseModel& m, int n) {
    if (n < 0) throw std::domain_error("morse_tridiag: need n >= 0");
    const double b = m.b;
    const int N = m.N;
    TridiagRow row;
    row.super = -(1.0 - N + n) * std::sqrt((n + 1.0) * (2.0 * b - 2.0 * N + n + 1.0));
    row.diag = -std::pow(N - b - 0.5, 2) + (1.0 - N + n) * (2.0 * n + 2.0 * b - 2.0 * N + 1.0) - n;
    row.sub = -(n - double(N)) * std::sqrt(n * (2.0 * b - 2.0 * N + n));
    return row;
}

std::vector<double> morse_bound_states(const MorseModel& m) {
    std::vector<double> ev;
    for (int k = 0; k < m.N; ++k) ev.push_back(-std::pow(m.b - k - 0.5, 2));
    return ev;  // ascending; the most negative entry is m = 0
}

std::vector<double> morse_block_eigenvalues(const MorseModel& m) {
    if (m.N == 0) return {};
    if (m.N == 1) return {morse_tridiag(m, 0).diag};
    trisolve::SymTridiag t;
    t.diag.resize(m.N);
    t.offdiag.resize(m.N - 1);
    for (int n = 0; n < m.N; ++n) t.diag[n] = morse_tridiag(m, n).diag;
    for (int n = 0; n + 1 < m.N; ++n) t.offdiag[n] = morse_tridiag(m, n).super;
    const auto ed = trisolve::eigh_tridiagonal(t);
    return {ed.values.data(), ed.values.data() + ed.values.size()};
}

// ------------------------------------------------- terminating hypergeometrics

namespace {

// Extended-precision complex scalar for the terminating sums. The alternating
// 3F2 terms cancel down ~12 digits by n = 30, which binary64 alone cannot
// absorb at the 1e-10 residual targets.
struct QComplex {
    __float128 re, im;
    QComplex(double r = 0.0, double i = 0.0) : re(r), im(i) {}
    QComplex(__float128 r, __float128 i) : re(r), im(i) {}
    QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
    QComplex operator*(const QComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QComplex operator/(const QComplex& o) const {
        const __float128 d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    Complex to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

}  // namespace

Complex HypTerminating::eval() const {
    // Locate the terminating numerator parameter.
    int terminate = -1;
    for (const Complex& a : num) {
        if (std::abs(a.imag()) < 1e-12 && a.real() <= 1e-12) {
            const double r = std::round(a.real());
            if (std::abs(a.real() - r) < 1e-12) {
                const int cand = static_cast<int>(-r);
                if (terminate < 0 || cand < terminate) terminate = cand;
            }
        }
    }
    if (terminate < 0)
        throw std::domain_error("HypTerminating: no nonpositive-integer numerator parameter");
    if (terminate > 200)
        throw std::domain_error("HypTerminating: termination index exceeds 200");
    for (const Complex& bden : den) {
        if (std::abs(bden.imag()) < 1e-12 && bden.real() <= 1e-12) {
            const double r = std::round(bden.real());
            if (std::abs(bden.real() - r) < 1e-12 && -static_cast<int>(r) < terminate)
                throw std::domain_error(
                    "HypTerminating: denominator parameter hits a pole before termination");
        }
    }
    QComplex sum(1.0), term(1.0);
    const QComplex x(arg.real(), arg.imag());
    for (int k = 0; k < terminate; ++k) {
        QComplex f(1.0);
        // The parameter shifts a + k must not round back to binary64: the
        // alternating sum amplifies parameter perturbations by its
        // cancellation factor.
        for (const Complex& a : num)
            f = f * QComplex(static_cast<__float128>(a.real()) + k,
                             static_cast<__float128>(a.imag()));
        for (const Complex& bden : den)
            f = f / QComplex(static_cast<__float128>(bden.real()) + k,
                             static_cast<__float128>(bden.imag()));
        term = term * f * x / QComplex(k + 1.0);
        sum = sum + term;
    }
    return sum.to_double();
}

double laguerre(int n, double alpha, double x) {
    HypTerminating h{{Complex(-n, 0.0)}, {Complex(alpha + 1.0, 0.0)}, Complex(x, 0.0)};
    return std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) -
                    std::lgamma(alpha + 1.0)) *
           h.eval().real();
}

double dual_hahn(int n, int x, double gamma, double delta, int Ncap) {
    HypTerminating h{{Complex(-n, 0.0), Complex(-x, 0.0), Complex(x + gamma + delta + 1.0, 0.0)},
                     {Complex(gamma + 1.0, 0.0), Complex(-Ncap, 0.0)},
                     Complex(1.0, 0.0)};
    return h.eval().real();
}

double cdh_S(int n, double y2, double a, double b, double c) {
    const double y = std::sqrt(std::max(0.0, y2));
    HypTerminating h{{Complex(-n, 0.0), Complex(a, y), Complex(a, -y)},
                     {Complex(a + b, 0.0), Complex(a + c, 0.0)},
                     Complex(1.0, 0.0)};
    return pochhammer(a + b, n) * pochhammer(a + c, n) * h.eval().real();
}

double gegenbauer_c(int n, double nu, double x) {
    HypTerminating h{{Complex(-n, 0.0), Complex(n + 2.0 * nu, 0.0)},
                     {Complex(nu + 0.5, 0.0)},
                     Complex(0.5 * (1.0 - x), 0.0)};
    return pochhammer(2.0 * nu, n) / std::tgamma(n + 1.0) * h.eval().real();
}

// ------------------------------------------------------ Morse spectral data

double expansion_defect(const MorseModel& m, int mIdx, double z) {
    if (mIdx < 0 || mIdx >= m.N)
        throw std::domain_error("expansion_defect: bound-state index out of range");
    const double b = m.b;
    const int N = m.N;
    const int x = N - 1 - mIdx;
    double lhs = 0.0, scale = 0.0;
    for (int n = 0; n < N; ++n) {
        const double term =
            dual_hahn(n, x, 2.0 * b - 2.0 * N, 0.0, N - 1) * laguerre(n, 2.0 * b - 2.0 * N, z);
        lhs += term;
        scale += std::abs(term);
    }
    const double C = ((N + mIdx + 1) % 2 == 0 ? 1.0 : -1.0) /
                     (pochhammer(N + mIdx - 2.0 * b + 1.0, N - 1 - mIdx) * binom(N - 1, mIdx));
    const double rhs = C * std::pow(z, x) * laguerre(mIdx, 2.0 * b - 2.0 * mIdx - 1.0, z);
    scale += std::abs(rhs);
    return std::abs(lhs - rhs) / std::max(scale, 1e-300);
}

double cdh_weight(const MorseModel& m, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("cdh_weight: need gamma > 0");
    const double b = m.b;
    const int N = m.N;
    const double logmod2 =
        2.0 * (lgamma_complex(Complex(b + 0.5, gamma)).real() +
               lgamma_complex(Complex(N - b + 0.5, gamma)).real() +
               lgamma_complex(Complex(b - N + 0.5, gamma)).real() -
               lgamma_complex(Complex(0.0, 2.0 * gamma)).real());
    const double w = std::exp(logmod2 - std::lgamma(N + 1.0) - std::lgamma(2.0 * b - N + 1.0)) /
                     (2.0 * M_PI);
    if (!std::isfinite(w)) throw std::range_error("cdh_weight: complex-gamma overflow");
    return w;
}

double cdh_orthonormal_P(const MorseModel& m, int n, double gamma2) {
    const double b = m.b;
    const int N = m.N;
    const double S = cdh_S(n, gamma2, b + 0.5, N - b + 0.5, b - N + 0.5);
    return S / (std::tgamma(n + 1.0) *
                std::sqrt(pochhammer(N + 1.0, n) * pochhammer(2.0 * b - N + 1.0, n)));
}

double cdh_inner(const MorseModel& m, int n, int k, double tol) {
    // 40-point Gauss-Legendre panel rule, extended until the tail is negligible.
    static const RecurrenceCoeffs leg = families::legendre();
    static const DiscreteMeasure rule = trisolve::gauss_quadrature(leg, 40, 2.0);
    double total = 0.0;
    double lo = 0.0;
    const double width = 2.0;
    int quiet = 0;
    for (int panel = 0; panel < 64; ++panel) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
            const double g = lo + 0.5 * width * (rule.nodes[j] + 1.0);
            s += 0.5 * width * rule.weights[j] * cdh_orthonormal_P(m, n, g * g) *
                 cdh_orthonormal_P(m, k, g * g) * cdh_weight(m, g);
        }
        total += s;
        lo += width;
        // Two consecutive negligible panels guard against oscillation zeros.
        quiet = (std::abs(s) < 0.1 * tol * std::max(1.0, std::abs(total))) ? quiet + 1 : 0;
        if (panel >= 5 && quiet >= 2) return total;
    }
    throw std::runtime_error("cdh_inner: quadrature tail did not fall below tolerance");
}

std::pair<double, double> cdh_recurrence(const MorseModel& m, int n) {
    const double b = m.b;
    const int N = m.N;
    const double An = (n + N + 1.0) * (n + 2.0 * b - N + 1.0);
    const double Cn = double(n) * n;  // n(n + b~ + c~ - 1) with b~ + c~ = 1
    const double a_hat = (n + 1.0) * std::sqrt((n + N + 1.0) * (n + 2.0 * b - N + 1.0));
    const double b_hat = An + Cn - std::pow(b + 0.5, 2);
    return {a_hat, b_hat};
}

// ------------------------------------------------------ Jacobi T = (1-x)(L+gamma)

void JacobiTModel::validate() const {
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw std::domain_error("jacobi_t_model: need alpha, beta > -1");
    const bool real_delta = std::abs(delta.imag()) < 1e-14;
    const bool critical_line = std::abs(delta.real() - 0.5 * (beta - alpha)) < 1e-14;
    if (!real_delta && !critical_line)
        throw std::domain_error("jacobi_t_model: need delta real or Re delta = (beta-alpha)/2");
}

JacobiTModel jacobi_t_model(double alpha, double beta, Complex delta) {
    JacobiTModel j;
    j.alpha = alpha;
    j.beta = beta;
    j.delta = delta;
    j.validate();
    const Complex g = -(alpha + delta + 1.0) * (beta - delta + 1.0);
    j.gamma = g.real();
    return j;
}

std::pair<double, double> jacobi_tridiag_coeffs(const JacobiTModel& j, int n) {
    if (n < 0) throw std::domain_error("jacobi_tridiag_coeffs: need n >= 0");
    const double a = j.alpha, b = j.beta;
    // Lambda^gamma_n = -(n+alpha+delta+1)(n+beta-delta+1), real for admissible delta.
    auto lam = [&](int k) {
        return -((double(k) + a + j.delta + 1.0) * (double(k) + b - j.delta + 1.0)).real();
    };
    const double s = a + b;
    const double denom_a = 2.0 * n + s + 2.0;
    if (std::abs(denom_a) < 1e-14 || std::abs(2.0 * n + s + 1.0) < 1e-14 ||
        std::abs(2.0 * n + s) < 1e-14)
        throw std::domain_error("jacobi_tridiag_coeffs: vanishing denominator");
    const double an = -lam(n) * 2.0 / denom_a *
                      std::sqrt((n + 1.0) * (n + a + 1.0) * (n + b + 1.0) * (n + s + 1.0) /
                                ((2.0 * n + s + 1.0) * (2.0 * n + s + 3.0)));
    const double bn = lam(n) * (n + a + 1.0) * (n + s + 1.0) /
                          ((2.0 * n + s + 1.0) * (2.0 * n + s + 2.0)) * 2.0 +
                      (n > 0 ? lam(n - 1) * 2.0 * n * (n + b) /
                                   ((2.0 * n + s) * (2.0 * n + s + 1.0))
                             : 0.0);
    return {an, bn};
}

double jacobi_T_project(const JacobiTModel& j, int n, int m) {
    if (n > 60 || m > 60) throw std::domain_error("jacobi_T_project: degrees capped at 60");
    const double a = j.alpha, b = j.beta;
    const int order = n + m + 8;
    const RecurrenceCoeffs gj = families::jacobi_unnormalized(a, b);
    const DiscreteMeasure rule = trisolve::gauss_quadrature(gj, order, gj.m0);
    const double hn = jacobi_h(n, a, b), hm = jacobi_h(m, a, b);
    double s = 0.0;
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
        const double x = rule.nodes[k];
        const double f = jacobi_poly(n, a, b, x);
        const double df = jacobi_deriv(n, a, b, x, 1);
        const double ddf = jacobi_deriv(n, a, b, x, 2);
        const double Tf = (1.0 - x) * (1.0 - x * x) * ddf +
                          (1.0 - x) * (b - a - 1.0 - (a + b + 3.0) * x) * df + j.gamma * (1.0 - x) * f;
        s += rule.weights[k] * Tf * jacobi_poly(m, a, b, x);
    }
    return s / std::sqrt(hn * hm);
}

SpectrumDescription jacobi_T_spectrum(const JacobiTModel& j) {
    SpectrumDescription sd;
    sd.ac_edge = -0.5 * std::pow(j.alpha + 1.0, 2);
    sd.discrete_family = 0;
    if (std::abs(j.delta.imag()) > 1e-14) return sd;  // no discrete spectrum off the real line
    const double d = j.delta.real();
    const double base1 = 0.5 * (1.0 + j.alpha) + d;
    const double base2 = 0.5 * (1.0 - j.alpha) + j.beta - d;
    for (int k = 0; base1 + k < 0.0; ++k)
        sd.discrete.push_back(sd.ac_edge + 2.0 * std::pow(base1 + k, 2));
    if (!sd.discrete.empty()) sd.discrete_family = 1;
    std::vector<double> second;
    for (int l = 0; base2 + l < 0.0; ++l)
        second.push_back(sd.ac_edge + 2.0 * std::pow(base2 + l, 2));
    if (!second.empty()) {
        if (sd.discrete_family != 0)
            throw std::logic_error("jacobi_T_spectrum: both discrete families nonempty");
        sd.discrete = second;
        sd.discrete_family = 2;
    }
    std::sort(sd.discrete.begin(), sd.discrete.end());
    return sd;
}

// ------------------------------------------- five-term operator T^(alpha,beta;kappa)

void FiveTermModel::validate() const {
    if (!(alpha > -1.0) || !(beta >= alpha))
        throw std::domain_error("five_term_model: need beta >= alpha > -1");
}

FiveTermModel five_term_model(double alpha, double beta, double kappa2) {
    FiveTermModel f;
    f.alpha = alpha;
    f.beta = beta;
    f.kappa2 = kappa2;
    f.rho = 0.25 * (kappa2 - std::pow(alpha + beta + 3.0, 2));
    f.K = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((alpha + beta + 2.0) * (alpha + beta + 3.0));
    f.validate();
    return f;
}

ConnectionCoeffs connection_coeffs(const FiveTermModel& f, int n) {
    const double a = f.alpha, b = f.beta, s = a + b;
    const double rk = 2.0 / std::sqrt(f.K);
    ConnectionCoeffs c{0.0, 0.0, 0.0};
    c.alpha_n = rk / (2.0 * n + s + 2.0) *
                std::sqrt((a + n + 1.0) * (b + n + 1.0) * (n + s + 1.0) * (n + s + 2.0) /
                          ((s + 2.0 * n + 1.0) * (s + 2.0 * n + 3.0)));
    if (n >= 1)
        c.beta_n = rk * (a - b) * std::sqrt(n * (n + s + 1.0)) /
                   ((s + 2.0 * n) * (s + 2.0 * n + 2.0));
    if (n >= 2)
        c.gamma_n = -rk / (2.0 * n + s) *
                    std::sqrt(n * (n - 1.0) * (a + n) * (b + n) /
                              ((s + 2.0 * n - 1.0) * (s + 2.0 * n + 1.0)));
    return c;
}

FiveTermCoeffs fiveterm_coeffs(const FiveTermModel& f, int n) {
    auto lam = [&](int k) { return -double(k) * (k + f.alpha + f.beta + 3.0) + f.rho; };
    const ConnectionCoeffs cn = connection_coeffs(f, n);
    const ConnectionCoeffs cn1 = connection_coeffs(f, n + 1);
    const ConnectionCoeffs cn2 = connection_coeffs(f, n + 2);
    FiveTermCoeffs out;
    out.a = f.K * cn.alpha_n * cn2.gamma_n * lam(n);
    out.b = f.K * (cn.alpha_n * cn1.beta_n * lam(n) +
                   (n >= 1 ? cn.beta_n * cn1.gamma_n * lam(n - 1) : 0.0));
    out.c = f.K * (cn.alpha_n * cn.alpha_n * lam(n) +
                   (n >= 1 ? cn.beta_n * cn.beta_n * lam(n - 1) : 0.0) +
                   (n >= 2 ? cn.gamma_n * cn.gamma_n * lam(n - 2) : 0.0));
    return out;
}

double orthonormal_jacobi(int n, double alpha, double beta, double x) {
    const double hn = jacobi_h(n, alpha, beta) / jacobi_mass(alpha, beta);
    return jacobi_poly(n, alpha, beta, x) / std::sqrt(hn);
}

double fiveterm_project(const FiveTermModel& f, int n, int m) {
    const double a = f.alpha, b = f.beta;
    const int order = n + m + 10;
    const RecurrenceCoeffs gj = families::jacobi_unnormalized(a, b);
    const DiscreteMeasure rule = trisolve::gauss_quadrature(gj, order, gj.m0);
    const double hn = jacobi_h(n, a, b), hm = jacobi_h(m, a, b);
    double s = 0.0;
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
        const double x = rule.nodes[k];
        const double w2 = 1.0 - x * x;
        const double ff = jacobi_poly(n, a, b, x);
        const double df = jacobi_deriv(n, a, b, x, 1);
        const double ddf = jacobi_deriv(n, a, b, x, 2);
        const double Tf = w2 * w2 * ddf + w2 * (b - a - (a + b + 4.0) * x) * df + f.rho * w2 * ff;
        s += rule.weights[k] * Tf * jacobi_poly(m, a, b, x);
    }
    return s / std::sqrt(hn * hm);
}

BlockRecurrence fold_to_block(std::function<double(int)> a, std::function<double(int)> b,
                              std::function<double(int)> c) {
    auto require_a = [a](int n) {
        const double v = a(n);
        if (v == 0.0)
            throw std::domain_error("fold_to_block: a_" + std::to_string(n) +
                                    " vanishes (invariant subspace)");
        return v;
    };
    BlockRecurrence blk;
    blk.N = 2;
    blk.M0 = Eigen::MatrixXcd::Identity(2, 2);
    blk.A = [require_a, b](int n) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
        A(0, 0) = require_a(2 * n);
        A(1, 0) = b(2 * n + 1);
        A(1, 1) = require_a(2 * n + 1);
        return A;
    };
    blk.B = [b, c](int n) {
        Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2, 2);
        B(0, 0) = c(2 * n);
        B(0, 1) = b(2 * n);
        B(1, 0) = b(2 * n);
        B(1, 1) = c(2 * n + 1);
        return B;
    };
    return blk;
}

BlockRecurrence fold_to_block(const FiveTermModel& f) {
    return fold_to_block([f](int n) { return fiveterm_coeffs(f, n).a; },
                         [f](int n) { return fiveterm_coeffs(f, n).b; },
                         [f](int n) { return fiveterm_coeffs(f, n).c; });
}

std::vector<Complex> fiveterm_sequence(const FiveTermModel& f, Complex lambda, Complex u0,
                                       Complex u1, int count) {
    std::vector<Complex> u{u0, u1};
    auto coeff = [&](int n) { return fiveterm_coeffs(f, n); };
    for (int n = 0; static_cast<int>(u.size()) < count; ++n) {
        // Relation at index n determines u_{n+2}.
        const FiveTermCoeffs cn = coeff(n);
        Complex rhs = lambda * u[n] - cn.b * u[n + 1] - cn.c * u[n];
        if (n >= 1) rhs -= coeff(n - 1).b * u[n - 1];
        if (n >= 2) rhs -= coeff(n - 2).a * u[n - 2];
        if (cn.a == 0.0) throw std::domain_error("fiveterm_sequence: a_n vanished");
        u.push_back(rhs / cn.a);
    }
    u.resize(count);
    return u;
}

}  // namespace spectraljacobi::jmatrix
