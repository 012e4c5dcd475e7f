#include "spectraljacobi/opcore.hpp"

#include <cmath>

#include "spectraljacobi/families.hpp"
#include "spectraljacobi/trisolve.hpp"

namespace spectraljacobi::opcore {

namespace {

void check_a(double ak, int k) {
    if (!(ak > 0.0))
        throw std::domain_error("recurrence coefficient a_" + std::to_string(k) +
                                " is not positive");
}

void check_finite(Complex v, int k) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::overflow_error("recurrence overflow at degree " + std::to_string(k));
}

}  // namespace

PolyPair eval_pair(const RecurrenceCoeffs& c, int n, Complex z) {
    if (n < 0) throw std::domain_error("eval_pair: need n >= 0");
    PolyPair out;
    out.p.resize(n + 1);
    out.r.resize(n + 1);
    out.p[0] = 1.0;
    out.r[0] = 0.0;
    if (n == 0) return out;
    const double a0 = c.a(0);
    check_a(a0, 0);
    out.p[1] = (z - c.b(0)) / a0;
    out.r[1] = 1.0 / a0;
    for (int k = 1; k < n; ++k) {
        const double ak = c.a(k);
        check_a(ak, k);
        const double akm1 = c.a(k - 1);
        const Complex zb = z - c.b(k);
        out.p[k + 1] = (zb * out.p[k] - akm1 * out.p[k - 1]) / ak;
        out.r[k + 1] = (zb * out.r[k] - akm1 * out.r[k - 1]) / ak;
        check_finite(out.p[k + 1], k + 1);
    }
    return out;
}

PolyPairDeriv eval_pair_deriv(const RecurrenceCoeffs& c, int n, Complex z) {
    if (n < 0) throw std::domain_error("eval_pair_deriv: need n >= 0");
    PolyPairDeriv out;
    out.p.assign(n + 1, 0.0);
    out.r.assign(n + 1, 0.0);
    out.dp.assign(n + 1, 0.0);
    out.dr.assign(n + 1, 0.0);
    out.p[0] = 1.0;
    if (n == 0) return out;
    const double a0 = c.a(0);
    check_a(a0, 0);
    out.p[1] = (z - c.b(0)) / a0;
    out.r[1] = 1.0 / a0;
    out.dp[1] = 1.0 / a0;
    for (int k = 1; k < n; ++k) {
        const double ak = c.a(k);
        check_a(ak, k);
        const double akm1 = c.a(k - 1);
        const Complex zb = z - c.b(k);
        out.p[k + 1] = (zb * out.p[k] - akm1 * out.p[k - 1]) / ak;
        out.r[k + 1] = (zb * out.r[k] - akm1 * out.r[k - 1]) / ak;
        out.dp[k + 1] = (zb * out.dp[k] + out.p[k] - akm1 * out.dp[k - 1]) / ak;
        out.dr[k + 1] = (zb * out.dr[k] + out.r[k] - akm1 * out.dr[k - 1]) / ak;
        check_finite(out.p[k + 1], k + 1);
    }
    return out;
}

std::vector<Complex> monic_values(const RecurrenceCoeffs& c, int n, Complex z) {
    const PolyPair pair = eval_pair(c, n, z);
    std::vector<Complex> monic(n + 1);
    double lead = 1.0;  // pi_n = p_n * prod_{k<n} a_k
    for (int k = 0; k <= n; ++k) {
        monic[k] = pair.p[k] * lead;
        lead *= c.a(k);
    }
    return monic;
}

std::vector<double> zeros(const RecurrenceCoeffs& c, int n) {
    if (n < 1) throw std::domain_error("zeros: need n >= 1");
    const DiscreteMeasure mu = trisolve::gauss_quadrature(c, n, 1.0);
    return {mu.nodes.data(), mu.nodes.data() + mu.nodes.size()};
}

Complex markov_stieltjes(const RecurrenceCoeffs& c, Complex z, int n) {
    if (z.imag() == 0.0) throw std::domain_error("markov_stieltjes: need Im z != 0");
    const PolyPair pair = eval_pair(c, n, z);
    const Complex pn = pair.p[n];
    if (pn == Complex(0.0, 0.0))
        throw std::domain_error("markov_stieltjes: p_n(z) vanished off the real axis");
    return -pair.r[n] / pn;
}

double cd_kernel(const RecurrenceCoeffs& c, int n, double x, double y) {
    if (n < 1) throw std::domain_error("cd_kernel: need n >= 1");
    const double anm1 = c.a(n - 1);
    if (x == y) {
        const PolyPairDeriv d = eval_pair_deriv(c, n, x);
        return anm1 * (d.dp[n].real() * d.p[n - 1].real() - d.dp[n - 1].real() * d.p[n].real());
    }
    const PolyPair px = eval_pair(c, n, x);
    const PolyPair py = eval_pair(c, n, y);
    return anm1 *
           (px.p[n].real() * py.p[n - 1].real() - px.p[n - 1].real() * py.p[n].real()) / (x - y);
}

double lognormal_moment(int n, double gamma, double r) {
    if (!(gamma > 0.0)) throw std::domain_error("lognormal_moment: need gamma > 0");
    // y = gamma ln x - (n+1)/(2 gamma) turns the integral into
    //   e^{(n+1)^2/(4 gamma^2)} / gamma * int e^{-y^2} (1 + r sgn sin(2 pi gamma y)) dy,
    // sgn = (-1)^{n+1} from sin(t + pi (n+1)). The sine part is odd; the rule
    // is symmetrized and each node paired with its mirror so that the odd part
    // cancels exactly and the moment is r-independent to the last bit.
    const double sgn = (n % 2 == 0) ? -1.0 : 1.0;
    const double prefactor = std::exp((n + 1.0) * (n + 1.0) / (4.0 * gamma * gamma)) / gamma;
    const RecurrenceCoeffs h = families::hermite();
    auto run = [&](int order) {
        const DiscreteMeasure gh = trisolve::gauss_quadrature(h, order, h.m0);
        const int m = static_cast<int>(gh.nodes.size());
        double s = 0.0;
        for (int j = 0; j < m / 2; ++j) {
            const double y = 0.5 * (gh.nodes[m - 1 - j] - gh.nodes[j]);
            const double w = 0.5 * (gh.weights[j] + gh.weights[m - 1 - j]);
            const double odd = std::sin(2.0 * M_PI * gamma * y);
            s += w * ((1.0 + r * sgn * odd) + (1.0 - r * sgn * odd));
        }
        if (m % 2 == 1) s += gh.weights[m / 2];  // center node, sin(0) = 0
        return prefactor * s;
    };
    const double coarse = run(64);
    const double fine = run(96);
    const double disagreement = std::abs(fine - coarse);
    if (disagreement > 1e-11 * std::max(1.0, std::abs(fine)))
        throw std::runtime_error("lognormal_moment: quadrature not converged, estimate " +
                                 std::to_string(disagreement));
    return fine;
}

double wronskian_drift(const RecurrenceCoeffs& c, int n, Complex z) {
    const PolyPair pair = eval_pair(c, n + 1, z);
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double ak = c.a(k);
        const Complex w = ak * (pair.p[k + 1] * pair.r[k] - pair.r[k + 1] * pair.p[k]);
        // Relative to the product scale: the two terms cancel down to -1 from
        // magnitudes that grow exponentially in k.
        const double scale = std::max(
            1.0, ak * (std::abs(pair.p[k + 1]) * std::abs(pair.r[k]) +
                       std::abs(pair.r[k + 1]) * std::abs(pair.p[k])));
        worst = std::max(worst, std::abs(w + 1.0) / scale);
    }
    return worst;
}

}  // namespace spectraljacobi::opcore
