#include "spectraljacobi/qkernel.hpp"

#include <cmath>

namespace spectraljacobi::qkernel {

void QParams::validate() const {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("QParams: need 0 < q < 1");
    if (!(alpha > q && alpha <= 1.0)) throw std::domain_error("QParams: need q < alpha <= 1");
}

Complex qpoch(Complex a, double q, int n) {
    Complex r = 1.0;
    if (n >= 0) {
        Complex aq = a;
        for (int k = 0; k < n; ++k) {
            r *= (1.0 - aq);
            aq *= q;
        }
        return r;
    }
    // (a;q)_{-m} = 1 / prod_{k=1..m} (1 - a q^{-k})
    for (int k = 1; k <= -n; ++k) r /= (1.0 - a * std::pow(q, -k));
    return r;
}

double qpoch(double a, double q, int n) { return qpoch(Complex(a), q, n).real(); }

Complex qpoch_inf(Complex a, double q) {
    if (!(std::abs(q) < 1.0)) throw std::domain_error("qpoch_inf: need |q| < 1");
    Complex r = 1.0, term = a;
    while (std::abs(term) >= 1e-17) {
        r *= (1.0 - term);
        term *= q;
    }
    return r;
}

double qpoch_inf(double a, double q) { return qpoch_inf(Complex(a), q).real(); }

Complex phi01(Complex b, double q, Complex z) {
    Complex sum = 1.0, term = 1.0;
    double qpow = 1.0;  // q^{2(k-1)} for the ratio at step k
    for (int k = 1; k < 2000; ++k) {
        term *= qpow * z / ((1.0 - std::pow(q, k)) * (1.0 - b));
        b *= q;
        qpow = std::pow(q, 2 * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

double asc_a(const QParams& p, int l) {
    const double q = p.q, a2 = p.alpha * p.alpha;
    return (a2 * std::pow(q, 2.0 * l + 0.5) / (1.0 + a2 * std::pow(q, 2.0 * l + 1.0))) /
           std::sqrt((1.0 + a2 * std::pow(q, 2.0 * l)) * (1.0 + a2 * std::pow(q, 2.0 * l + 2.0)));
}

double asc_b(const QParams& p, int l) {
    const double q = p.q, a2 = p.alpha * p.alpha;
    return a2 * (1.0 + q) * std::pow(q, 2.0 * l - 1.0) /
           ((1.0 + a2 * std::pow(q, 2.0 * l + 1.0)) * (1.0 + a2 * std::pow(q, 2.0 * l - 1.0)));
}

BiInfiniteCoeffs asc_coeffs(const QParams& p) {
    p.validate();
    return {[p](int l) { return asc_a(p, l); }, [p](int l) { return asc_b(p, l); }, true};
}

namespace {

// log(1 + a2 q^m), stable for exponents far outside the representable range.
double log1p_a2qm(double a2, double q, double m) {
    const double e = m * std::log(q) + std::log(a2);
    if (e > 700.0) return e + std::log1p(std::exp(-e));
    if (e < -700.0) return 0.0;
    return std::log1p(std::exp(e));
}

// log (-a2 q; q)_{2l}: all factors are 1 + a2 q^k > 0.
double log_qnegpoch(double a2, double q, int two_l) {
    double s = 0.0;
    if (two_l >= 0)
        for (int k = 0; k < two_l; ++k) s += log1p_a2qm(a2, q, 1.0 + k);
    else
        for (int k = 1; k <= -two_l; ++k) s -= log1p_a2qm(a2, q, 1.0 - k);
    return s;
}

double log_Cl(const QParams& p, int l) {
    const double a2 = p.alpha * p.alpha;
    return 2.0 * l * std::log(p.alpha) + l * (l - 0.5) * std::log(p.q) +
           0.5 * log1p_a2qm(a2, p.q, 2.0 * l) - log_qnegpoch(a2, p.q, 2 * l);
}

}  // namespace

double asc_Cl(const QParams& p, int l) { return std::exp(log_Cl(p, l)); }

// C_l underflows/overflows around |l| ~ 25, so the prefactors are assembled in
// the log domain; exp of a very negative real part gives a clean zero.
Complex phi_plus_at(const QParams& p, Complex z, int l) {
    const double q = p.q, a2 = p.alpha * p.alpha;
    const double w = -a2 * std::pow(q, 2.0 * l + 1.0);
    const Complex logpre = log_Cl(p, l) - Complex(l) * std::log(z);
    return std::exp(logpre) * phi01(w, q, w / z);
}

Complex phi_minus_at(const QParams& p, Complex z, int l) {
    const double q = p.q, a2 = p.alpha * p.alpha;
    const double w = -std::pow(q, 1.0 - 2.0 * l) / a2;
    const Complex logpre = Complex(l) * std::log(z) - log_Cl(p, l);
    return std::exp(logpre) * phi01(w, q, w / z);
}

Complex EigenSeq::at(int l) const {
    const int idx = l - l_min;
    if (idx < 0 || idx >= static_cast<int>(values.size()))
        throw std::domain_error("EigenSeq: window does not contain l = " + std::to_string(l));
    return values[static_cast<std::size_t>(idx)];
}

double EigenSeq::residual(const BiInfiniteCoeffs& c, Complex z) const {
    double worst = 0.0;
    for (int l = l_min + 1; l < l_max(); ++l) {
        const Complex lhs = c.a(l) * at(l + 1) + c.b(l) * at(l) + c.a(l - 1) * at(l - 1);
        const double scale =
            std::max({std::abs(at(l - 1)), std::abs(at(l)), std::abs(at(l + 1)), 1e-300});
        worst = std::max(worst, std::abs(lhs - z * at(l)) / scale);
    }
    return worst;
}

namespace {

// Smallest l at which the phi_plus series argument is <= theta in modulus.
int plus_series_floor(const QParams& p, double absz, double theta = 0.5) {
    const double lq = std::log(p.q);
    const double bound = (std::log(theta * absz / (p.alpha * p.alpha)) / lq - 1.0) / 2.0;
    return static_cast<int>(std::ceil(bound));
}

// Largest l at which the phi_minus series argument is <= theta in modulus.
int minus_series_ceil(const QParams& p, double absz, double theta = 0.5) {
    const double lq = std::log(p.q);
    const double bound = (1.0 - std::log(theta * p.alpha * p.alpha * absz) / lq) / 2.0;
    return static_cast<int>(std::floor(bound));
}

}  // namespace

EigenSeq phi_plus_window(const QParams& p, Complex z, int lmin, int lmax) {
    p.validate();
    if (z == Complex(0.0)) throw std::domain_error("phi_plus_window: z must be nonzero");
    if (lmax < lmin) throw std::domain_error("phi_plus_window: empty window");
    const int l0 = plus_series_floor(p, std::abs(z));
    const int top = std::max(lmax, l0 + 1);
    EigenSeq seq;
    seq.l_min = lmin;
    seq.side = EigenSeq::Side::PlusSummable;
    seq.values.assign(static_cast<std::size_t>(top - lmin + 1), Complex(0.0));
    auto set = [&](int l, Complex v) { seq.values[static_cast<std::size_t>(l - lmin)] = v; };
    for (int l = std::max(lmin, l0); l <= top; ++l) set(l, phi_plus_at(p, z, l));
    // Below l0 the series cancels; recurse downward, the direction in which
    // phi is the dominant solution.
    for (int l = std::max(lmin, l0); l > lmin; --l) {
        const Complex lower =
            ((z - asc_b(p, l)) * seq.at(l) - asc_a(p, l) * seq.at(l + 1)) / asc_a(p, l - 1);
        set(l - 1, lower);
    }
    return seq;
}

EigenSeq phi_minus_window(const QParams& p, Complex z, int lmin, int lmax) {
    p.validate();
    if (z == Complex(0.0)) throw std::domain_error("phi_minus_window: z must be nonzero");
    if (lmax < lmin) throw std::domain_error("phi_minus_window: empty window");
    const int l0 = minus_series_ceil(p, std::abs(z));
    const int bottom = std::min(lmin, l0 - 1);
    EigenSeq seq;
    seq.l_min = bottom;
    seq.side = EigenSeq::Side::MinusSummable;
    seq.values.assign(static_cast<std::size_t>(lmax - bottom + 1), Complex(0.0));
    auto set = [&](int l, Complex v) { seq.values[static_cast<std::size_t>(l - bottom)] = v; };
    for (int l = bottom; l <= std::min(lmax, l0); ++l) set(l, phi_minus_at(p, z, l));
    for (int l = std::min(lmax, l0); l < lmax; ++l) {
        const Complex upper =
            ((z - asc_b(p, l)) * seq.at(l) - asc_a(p, l - 1) * seq.at(l - 1)) / asc_a(p, l);
        set(l + 1, upper);
    }
    return seq;
}

Complex casorati(const EigenSeq& v, const EigenSeq& f, const BiInfiniteCoeffs& c, int l) {
    return c.a(l) * (v.at(l + 1) * f.at(l) - f.at(l + 1) * v.at(l));
}

Complex casorati_closed_form(const QParams& p, Complex z) {
    return -z * qpoch_inf(1.0 / z, p.q);
}

double spectrum_proportionality(const QParams& p, int n) {
    const double a2 = p.alpha * p.alpha;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(p.alpha, 2 * n + 2) * qpoch_inf(-1.0 / a2, p.q) /
           qpoch_inf(-a2 * p.q, p.q);
}

std::vector<SpectrumEntry> discrete_spectrum(const QParams& p, int nmax, int window) {
    p.validate();
    if (nmax < 0) throw std::domain_error("discrete_spectrum: need nmax >= 0");
    std::vector<SpectrumEntry> out;
    const double qq = qpoch_inf(p.q, p.q);
    const double a2 = p.alpha * p.alpha;
    const double norm_prefactor = qpoch_inf(-1.0 / a2, p.q) * qq / qpoch_inf(-a2 * p.q, p.q);
    for (int n = 0; n <= nmax; ++n) {
        const double zn = std::pow(p.q, n);
        // Crossover where both series arguments are comparable in modulus.
        const int lc = static_cast<int>(std::lround(-std::log(p.alpha) / std::log(p.q)));
        const double ratio = spectrum_proportionality(p, n);
        EigenSeq vec;
        vec.l_min = -window;
        vec.side = EigenSeq::Side::PlusSummable;
        vec.values.resize(static_cast<std::size_t>(2 * window + 1));
        for (int l = -window; l <= window; ++l) {
            const Complex v = (l >= lc) ? phi_plus_at(p, zn, l)
                                        : ratio * phi_minus_at(p, zn, l);
            vec.values[static_cast<std::size_t>(l + window)] = v;
        }
        double norm_sq = 0.0;
        for (const Complex& v : vec.values) norm_sq += std::norm(v);
        // The q-exponent is -n(n+1)/2: consistent with the residue
        // (-1)^{n+1} q^{n(n+1)/2} / ((q;q)_n (q;q)_inf) of 1/[phi, Phi] at q^n
        // and with the orthogonality normalization of the N-extremal measures.
        const double closed =
            norm_prefactor * std::pow(p.alpha, 2 * n + 2) *
            std::pow(p.q, -0.5 * n * (n + 1.0)) * qpoch(p.q, p.q, n);
        SpectrumEntry e;
        e.n = n;
        e.eigenvalue = zn;
        e.vec = std::move(vec);
        e.norm_sq_closed = closed;
        e.norm_sq_windowed = norm_sq;
        e.norm_check_error = std::abs(norm_sq - closed) / closed;
        out.push_back(std::move(e));
    }
    return out;
}

DiscreteMeasure nextremal_measure(const QParams& p, int L) {
    p.validate();
    if (L < 1) throw std::domain_error("nextremal_measure: need L >= 1");
    // Masses decay like q^{2l^2}; entries that underflow binary64 carry no
    // representable mass and are dropped from the window.
    std::vector<double> nodes, weights;
    for (int l = -L; l <= L; ++l) {
        const double aql = p.alpha * std::pow(p.q, l);
        const double logw = 4.0 * l * std::log(p.alpha) +
                            (2.0 * l * l - l) * std::log(p.q) +
                            log1p_a2qm(p.alpha * p.alpha, p.q, 2.0 * l);
        const double w = std::exp(logw);
        if (w > 0.0) {
            nodes.push_back(0.5 * (1.0 / aql - aql));
            weights.push_back(w);
        }
    }
    DiscreteMeasure mu;
    mu.nodes = Eigen::Map<Eigen::VectorXd>(nodes.data(), nodes.size());
    mu.weights = Eigen::Map<Eigen::VectorXd>(weights.data(), weights.size());
    mu.total_mass = mu.weights.sum();
    mu.validate();
    return mu;
}

double qih_monic(int n, double q, double xi) {
    double hm1 = 0.0, h = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = xi * h - std::pow(q, -k) * (1.0 - std::pow(q, k)) * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

double qih_norm_rhs(const QParams& p, int n) {
    const double a2 = p.alpha * p.alpha;
    return std::pow(p.q, -0.5 * n * (n + 1.0)) * qpoch(p.q, p.q, n) * qpoch_inf(-a2, p.q) *
           qpoch_inf(-p.q / a2, p.q) * qpoch_inf(p.q, p.q);
}

double nextremal_inner(const QParams& p, const DiscreteMeasure& mu, int n, int m) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < mu.nodes.size(); ++j)
        s += mu.weights[j] * qih_monic(n, p.q, 2.0 * mu.nodes[j]) *
             qih_monic(m, p.q, 2.0 * mu.nodes[j]);
    return s;
}

double truncation_defect(const QParams& p, int n) {
    if (n < 1) throw std::domain_error("truncation_defect: need n >= 1");
    // Coefficients decay monotonically beyond a few steps; a margin of rows
    // past the cut is enough to capture the supremum.
    double sup = 0.0;
    for (int l = n + 1; l <= n + 40; ++l) {
        sup = std::max(sup, asc_a(p, l - 1) + std::abs(asc_b(p, l)) + asc_a(p, l));
        sup = std::max(sup, asc_a(p, -l - 1) + std::abs(asc_b(p, -l)) + asc_a(p, -l));
    }
    return sup;
}

}  // namespace spectraljacobi::qkernel
