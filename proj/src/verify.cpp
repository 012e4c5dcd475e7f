#include "spectraljacobi/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "spectraljacobi/families.hpp"
#include "spectraljacobi/jmatrix.hpp"
#include "spectraljacobi/mvop.hpp"
#include "spectraljacobi/opcore.hpp"
#include "spectraljacobi/qkernel.hpp"
#include "spectraljacobi/trisolve.hpp"

namespace spectraljacobi::verify {

void RunConfig::validate() const {
    if (!(identity_tol > 0.0) || !(quadrature_tol > 0.0) || !(tail_tol > 0.0) || !(abs_tol > 0.0))
        throw std::domain_error("RunConfig: tolerances must be positive");
    if (window < 1 || degree < 1 || quad_order < 1)
        throw std::domain_error("RunConfig: budgets must be >= 1");
    if (format != "csv" && format != "json")
        throw std::domain_error("RunConfig: format must be csv or json");
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.identity_tol = j.value("identity_tol", c.identity_tol);
    c.quadrature_tol = j.value("quadrature_tol", c.quadrature_tol);
    c.tail_tol = j.value("tail_tol", c.tail_tol);
    c.abs_tol = j.value("abs_tol", c.abs_tol);
    c.window = j.value("window", c.window);
    c.degree = j.value("degree", c.degree);
    c.quad_order = j.value("quad_order", c.quad_order);
    c.format = j.value("format", c.format);
    c.output = j.value("output", c.output);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

nlohmann::json RunConfig::to_json() const {
    return {{"schema", "spectraljacobi/1"},
            {"identity_tol", identity_tol},
            {"quadrature_tol", quadrature_tol},
            {"tail_tol", tail_tol},
            {"abs_tol", abs_tol},
            {"window", window},
            {"degree", degree},
            {"quad_order", quad_order},
            {"format", format},
            {"output", output},
            {"seed", seed}};
}

RunConfig RunConfig::from_environment() {
    const char* path = std::getenv("SPECTRALJACOBI_CONFIG");
    if (path == nullptr) return {};
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open config file ") + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

namespace {

using qkernel::QParams;

Check mk(std::string name, double residual, double tol, std::string context = "") {
    return {std::move(name), residual, tol, residual <= tol, std::move(context)};
}

double poch(double x, int n) {
    double r = 1.0;
    for (int j = 0; j < n; ++j) r *= (x + j);
    return r;
}

RecurrenceCoeffs random_bounded_family(std::mt19937& rng, int length) {
    auto a = std::make_shared<std::vector<double>>();
    auto b = std::make_shared<std::vector<double>>();
    std::uniform_real_distribution<double> ua(0.2, 2.0), ub(-1.0, 1.0);
    for (int i = 0; i < length; ++i) {
        a->push_back(ua(rng));
        b->push_back(ub(rng));
    }
    RecurrenceCoeffs c;
    c.a = [a](int n) { return a->at(static_cast<std::size_t>(n)); };
    c.b = [b](int n) { return b->at(static_cast<std::size_t>(n)); };
    c.label = "random";
    c.m0 = 1.0;
    return c;
}

BlockRecurrence random_block(std::mt19937& rng, int N, int length) {
    auto As = std::make_shared<std::vector<Eigen::MatrixXcd>>();
    auto Bs = std::make_shared<std::vector<Eigen::MatrixXcd>>();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < length; ++i) {
        Eigen::MatrixXcd A(N, N), H(N, N);
        do {
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) A(r, c) = Complex(u(rng), u(rng));
        } while (std::abs(A.determinant()) < 0.1);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) H(r, c) = Complex(u(rng), u(rng));
        Bs->push_back(0.5 * (H + H.adjoint()));
        As->push_back(A);
    }
    BlockRecurrence b;
    b.N = N;
    b.M0 = Eigen::MatrixXcd::Identity(N, N);
    b.A = [As](int n) { return As->at(static_cast<std::size_t>(n)); };
    b.B = [Bs](int n) { return Bs->at(static_cast<std::size_t>(n)); };
    return b;
}

Eigen::MatrixXcd random_unitary(std::mt19937& rng, int N) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd Z(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) Z(r, c) = Complex(g(rng), g(rng));
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ();
    return Q;
}

}  // namespace

std::vector<Check> suite_casorati(const RunConfig& cfg) {
    std::vector<Check> out;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> uq(0.2, 0.8), uz(0.3, 2.0), uph(0.15, 2.95);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double q = uq(rng);
        std::uniform_real_distribution<double> ua(q + 0.01, 1.0);
        const QParams p{q, ua(rng)};
        const Complex z = std::polar(uz(rng), uph(rng));
        const auto coeffs = qkernel::asc_coeffs(p);
        const auto v = qkernel::phi_plus_window(p, z, -11, 11);
        const auto f = qkernel::phi_minus_window(p, z, -11, 11);
        Complex base = qkernel::casorati(v, f, coeffs, 0);
        double drift = 0.0;
        for (int l = -10; l <= 10; ++l)
            drift = std::max(drift,
                             std::abs(qkernel::casorati(v, f, coeffs, l) - base) / std::abs(base));
        worst = std::max(worst, drift);
    }
    out.push_back(mk("casorati.constancy.relative-drift", worst, cfg.identity_tol));
    return out;
}

std::vector<Check> suite_wronskian(const RunConfig& cfg) {
    std::vector<Check> out;
    std::mt19937 rng(cfg.seed + 1);
    std::uniform_real_distribution<double> uz(0.4, 2.5), uph(0.2, 2.9);
    const double q = 0.5;
    double worst = 0.0;
    double worst_vanish = 0.0;
    for (double alpha : {0.6, 0.8, 1.0}) {
        const QParams p{q, alpha};
        for (int trial = 0; trial < 20; ++trial) {
            const Complex z = std::polar(uz(rng), uph(rng));
            const Complex w = qkernel::casorati(qkernel::phi_plus_window(p, z, 0, 1),
                                                qkernel::phi_minus_window(p, z, 0, 1),
                                                qkernel::asc_coeffs(p), 0);
            worst = std::max(worst,
                             std::abs(w - qkernel::casorati_closed_form(p, z)) / std::abs(z));
        }
        for (int n = 0; n <= 6; ++n) {
            const Complex zn(std::pow(q, n), 0.0);
            const Complex w = qkernel::casorati(qkernel::phi_plus_window(p, zn, 0, 1),
                                                qkernel::phi_minus_window(p, zn, 0, 1),
                                                qkernel::asc_coeffs(p), 0);
            worst_vanish = std::max(worst_vanish, std::abs(w));
        }
    }
    out.push_back(mk("wronskian.closed-form", worst, 1e-8));
    out.push_back(mk("wronskian.vanishing-at-q^n", worst_vanish, 1e-9));
    return out;
}

std::vector<Check> suite_qhermite(const RunConfig& cfg) {
    std::vector<Check> out;
    const QParams p{0.5, 0.8};
    const int L = std::max(40, cfg.window);
    const DiscreteMeasure mu = qkernel::nextremal_measure(p, L);
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m <= n; ++m) {
            const double s = qkernel::nextremal_inner(p, mu, n, m);
            const double expect = (n == m) ? qkernel::qih_norm_rhs(p, n) : 0.0;
            const double scale = qkernel::qih_norm_rhs(p, std::max(n, m));
            worst = std::max(worst, std::abs(s - expect) / scale);
        }
    out.push_back(mk("qhermite.orthogonality", worst, 1e-8));

    const auto spec = qkernel::discrete_spectrum(p, 6, std::max(60, cfg.window));
    double worst_norm = 0.0;
    for (const auto& e : spec) worst_norm = std::max(worst_norm, e.norm_check_error);
    out.push_back(mk("qhermite.eigenvector-norms", worst_norm, 1e-8));

    double worst_orth = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Complex dot = 0.0;
            for (int l = spec[i].vec.l_min; l <= spec[i].vec.l_max(); ++l)
                dot += spec[i].vec.at(l) * std::conj(spec[j].vec.at(l));
            worst_orth = std::max(worst_orth, std::abs(dot) / std::sqrt(spec[i].norm_sq_windowed *
                                                                        spec[j].norm_sq_windowed));
        }
    out.push_back(mk("qhermite.eigenvector-orthogonality", worst_orth, 1e-8));

    // z = 0 admits no square-summable solution: both explicit solutions grow.
    const double q = p.q, a2 = p.alpha * p.alpha;
    auto u1 = [&](int l) {
        return ((l % 2 == 0) ? 1.0 : -1.0) * std::pow(q, -0.5 * l) *
               std::sqrt(1.0 + a2 * std::pow(q, 2.0 * l));
    };
    auto u2 = [&](int l) {
        return ((l % 2 == 0) ? 1.0 : -1.0) * std::pow(q, -1.5 * l) * (1.0 - std::pow(q, l)) *
               (1.0 + a2 * std::pow(q, l)) * std::sqrt(1.0 + a2 * std::pow(q, 2.0 * l));
    };
    const double tail1 = std::abs(u1(-55)) + std::abs(u1(55));
    const double tail2 = std::abs(u2(55));
    out.push_back(mk("qhermite.zero-energy-growth", (tail1 > 1e6 && tail2 > 1e6) ? 0.0 : 1.0, 0.5,
                     "both z=0 solutions leave l^2 (window 60)"));
    return out;
}

std::vector<Check> suite_compactness(const RunConfig&) {
    std::vector<Check> out;
    for (double q : {0.3, 0.5, 0.7}) {
        const QParams p{q, 0.8};
        std::vector<double> defct;
        for (int n = 5; n <= 30; ++n) defct.push_back(qkernel::truncation_defect(p, n));
        double worst_ratio = 0.0;
        bool monotone = true;
        for (std::size_t i = 1; i < defct.size(); ++i) {
            worst_ratio = std::max(worst_ratio, defct[i] / defct[i - 1]);
            monotone = monotone && defct[i] <= defct[i - 1] * (1.0 + 1e-12);
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < defct.size(); ++i) {
            const double n = 5.0 + i;
            sx += n;
            sy += std::log(defct[i]);
            sxx += n * n;
            sxy += n * std::log(defct[i]);
        }
        const double cnt = static_cast<double>(defct.size());
        const double fitted = std::exp((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
        const std::string tag = "q=" + std::to_string(q);
        out.push_back(mk("compactness.ratio-upper-bound[" + tag + "]",
                         worst_ratio / (1.1 * q), 1.0, tag));
        out.push_back(mk("compactness.monotone[" + tag + "]", monotone ? 0.0 : 1.0, 0.5, tag));
        // The honest band estimate decays like q^2 per step; report the fitted
        // ratio against q^2.
        out.push_back(mk("compactness.fitted-ratio-vs-q^2[" + tag + "]",
                         std::abs(fitted - q * q) / (q * q), 1e-2,
                         "fitted=" + std::to_string(fitted)));
    }
    return out;
}

std::vector<Check> suite_favard(const RunConfig& cfg) {
    std::vector<Check> out;
    std::mt19937 rng(cfg.seed + 2);
    std::uniform_real_distribution<double> ua(0.9, 1.1), ub(-0.1, 0.1);
    double worst = 0.0;
    const int M = std::min(30, cfg.degree);
    int accepted = 0;
    while (accepted < 20) {
        // Mildly disordered bounded chains; draws whose truncation carries a
        // quadrature weight below 1e-4 (localization ghosts) are redrawn,
        // since the identity at such nodes is not representable in binary64.
        auto a = std::make_shared<std::vector<double>>();
        auto b = std::make_shared<std::vector<double>>();
        for (int i = 0; i < M + 1; ++i) {
            a->push_back(ua(rng));
            b->push_back(ub(rng));
        }
        const RecurrenceCoeffs c{[a](int n) { return a->at(n); },
                                 [b](int n) { return b->at(n); },
                                 "random",
                                 1.0};
        const DiscreteMeasure mu = trisolve::gauss_quadrature(c, M, 1.0);
        double min_gap = 1e300;
        for (int j = 1; j < M; ++j) min_gap = std::min(min_gap, mu.nodes[j] - mu.nodes[j - 1]);
        if (mu.weights.minCoeff() < 1e-4 || min_gap < 1e-12 * (mu.nodes[M - 1] - mu.nodes[0]))
            continue;
        ++accepted;
        worst = std::max(worst, trisolve::orthonormality_defect(mu, c, M));
    }
    out.push_back(mk("favard.round-trip", worst, cfg.identity_tol));

    double worst_moment = 0.0;
    const RecurrenceCoeffs leg = families::legendre();
    for (int k = 0; k <= 2 * 12 - 1; ++k)
        worst_moment = std::max(worst_moment, trisolve::moment_defect(leg, 12, k));
    out.push_back(mk("favard.moment-exactness", worst_moment, cfg.identity_tol));
    return out;
}

std::vector<Check> suite_interlacing(const RunConfig& cfg) {
    std::vector<Check> out;
    std::mt19937 rng(cfg.seed + 3);
    bool ok = true;
    for (int trial = 0; trial < 25 && ok; ++trial) {
        const RecurrenceCoeffs c = random_bounded_family(rng, 22);
        for (int n = 2; n <= 20 && ok; n += 3) {
            const auto lo = opcore::zeros(c, n);
            const auto hi = opcore::zeros(c, n + 1);
            // Ties below eigensolver resolution count as interlacing: edge
            // zeros of consecutive truncations can coincide to machine
            // precision when the trailing couplings are small.
            const double tol = 1e-12 * (hi.back() - hi.front());
            for (int i = 0; i < n; ++i)
                ok = ok && hi[i] < lo[i] + tol && lo[i] < hi[i + 1] + tol;
        }
    }
    out.push_back(mk("interlacing.zeros", ok ? 0.0 : 1.0, 0.5));
    return out;
}

std::vector<Check> suite_markov(const RunConfig& cfg) {
    std::vector<Check> out;
    const RecurrenceCoeffs semi = families::chebyshev_u();
    const Complex z(0.0, 2.0);
    const Complex approx = opcore::markov_stieltjes(semi, z, 200);
    const DiscreteMeasure mu = trisolve::gauss_quadrature(semi, std::max(cfg.quad_order, 400), 1.0);
    Complex oracle = 0.0;
    for (Eigen::Index j = 0; j < mu.nodes.size(); ++j)
        oracle += mu.weights[j] / (mu.nodes[j] - z);
    out.push_back(mk("markov.semicircle-z=2i", std::abs(approx - oracle), 1e-8));

    // Herglotz: the approximants map the upper half plane into itself.
    std::mt19937 rng(cfg.seed + 4);
    std::uniform_real_distribution<double> ur(-2.0, 2.0), ui(0.1, 2.0);
    double worst = 0.0;
    for (const char* fam : {"legendre", "chebyshev_t", "chebyshev_u", "laguerre:0.5"}) {
        const RecurrenceCoeffs c = families::from_name(fam);
        for (int t = 0; t < 10; ++t) {
            const Complex zz(ur(rng), ui(rng));
            worst = std::min(worst, opcore::markov_stieltjes(c, zz, 80).imag());
        }
    }
    out.push_back(mk("markov.herglotz-min-imag", worst < 0.0 ? -worst : 0.0, cfg.abs_tol));

    std::mt19937 rng2(cfg.seed + 5);
    double worst_w = 0.0;
    for (int t = 0; t < 10; ++t) {
        const RecurrenceCoeffs c = random_bounded_family(rng2, 52);
        worst_w = std::max(worst_w, opcore::wronskian_drift(c, 50, Complex(ur(rng2), ui(rng2))));
    }
    out.push_back(mk("markov.second-kind-wronskian", worst_w, cfg.identity_tol));
    return out;
}

std::vector<Check> suite_cd(const RunConfig& cfg) {
    std::vector<Check> out;
    const RecurrenceCoeffs leg = families::legendre();
    double worst = 0.0;
    for (int n : {1, 2, 5, 9}) {
        const auto px = opcore::eval_pair(leg, n, 0.3);
        const auto py = opcore::eval_pair(leg, n, -0.7);
        double direct = 0.0;
        for (int k = 0; k < n; ++k) direct += (px.p[k] * py.p[k]).real();
        worst = std::max(worst, std::abs(opcore::cd_kernel(leg, n, 0.3, -0.7) - direct) /
                                    std::max(1.0, std::abs(direct)));
    }
    out.push_back(mk("cd.two-point-vs-summation", worst, 1e-12));

    double worst_conf = 0.0;
    for (int n : {2, 5, 9}) {
        const double h = 1e-6;
        const double diff = opcore::cd_kernel(leg, n, 0.3 + h, 0.3);
        const double conf = opcore::cd_kernel(leg, n, 0.3, 0.3);
        worst_conf = std::max(worst_conf, std::abs(conf - diff) / std::max(1.0, std::abs(conf)));
    }
    out.push_back(mk("cd.confluent-vs-divided-difference", worst_conf, 1e-5));

    std::mt19937 rng(cfg.seed + 6);
    std::uniform_real_distribution<double> ux(-0.9, 0.9);
    double worst_rand = 0.0;
    for (int t = 0; t < 10; ++t) {
        const RecurrenceCoeffs c = random_bounded_family(rng, 13);
        const double x = ux(rng), y = ux(rng);
        const auto px = opcore::eval_pair(c, 12, x);
        const auto py = opcore::eval_pair(c, 12, y);
        double direct = 0.0;
        for (int k = 0; k < 12; ++k) direct += (px.p[k] * py.p[k]).real();
        worst_rand = std::max(worst_rand, std::abs(opcore::cd_kernel(c, 12, x, y) - direct) /
                                              std::max(1.0, std::abs(direct)));
    }
    out.push_back(mk("cd.random-families", worst_rand, cfg.identity_tol));
    return out;
}

std::vector<Check> suite_stieltjes(const RunConfig&) {
    std::vector<Check> out;
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n) {
        const double base = opcore::lognormal_moment(n, 1.0, 0.0);
        for (double r : {1.0, -1.0, 0.5, -0.5})
            worst = std::max(worst, std::abs(opcore::lognormal_moment(n, 1.0, r) - base));
    }
    out.push_back(mk("stieltjes.moments-independent-of-r", worst, 1e-9));
    const double m0 = opcore::lognormal_moment(0, 1.0, 0.0);
    const double expect = std::sqrt(M_PI) * std::exp(0.25);
    out.push_back(mk("stieltjes.gaussian-value", std::abs(m0 - expect) / expect, 1e-12));
    return out;
}

std::vector<Check> suite_liouville(const RunConfig& cfg) {
    std::vector<Check> out;
    std::mt19937 rng(cfg.seed + 7);
    double worst = 0.0;
    const Complex z(1.0, 1.0);
    for (int N : {2, 3}) {
        for (int trial = 0; trial < 25; ++trial) {
            const BlockRecurrence b = random_block(rng, N, 21);
            for (int k : {1, 5, 20}) {
                const auto [d1, d2] = mvop::liouville_ostrogradsky_defect(b, k, z);
                worst = std::max(worst, std::max(d1, d2));
            }
        }
    }
    for (double ell : {0.5, 1.0}) {
        const BlockRecurrence g = mvop::gegenbauer(ell, 1.0).orthonormal();
        for (int k : {1, 5, 20}) {
            const auto [d1, d2] = mvop::liouville_ostrogradsky_defect(g, k, z);
            worst = std::max(worst, std::max(d1, d2));
        }
    }
    out.push_back(mk("liouville-ostrogradsky.defects", worst, cfg.identity_tol));
    return out;
}

std::vector<Check> suite_gegenbauer(const RunConfig& cfg) {
    std::vector<Check> out;
    const mvop::GegenbauerFamily fam = mvop::gegenbauer(1.0, 1.5);
    const int N = fam.size();

    // 200-point Gauss-Jacobi quadrature of P_n W P_m^* against delta_nm H_n.
    const RecurrenceCoeffs gj = families::jacobi_unnormalized(1.0, 1.0);
    const DiscreteMeasure rule =
        trisolve::gauss_quadrature(gj, std::max(cfg.quad_order, 200), gj.m0);
    double worst = 0.0;
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= n; ++m) {
            Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N, N);
            for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
                const double x = rule.nodes[j];
                const auto P = fam.monic_values(std::max(n, m), x);
                G += rule.weights[j] * P[n] * fam.W_reduced(x) * P[m].transpose();
            }
            if (n == m) G -= fam.H(n);
            worst = std::max(worst, G.cwiseAbs().maxCoeff());
        }
    out.push_back(mk("gegenbauer.orthogonality-ell1-nu1.5", worst, 1e-9));

    double min_eig = 1.0;
    for (double nu : {0.5, 1.0, 2.0}) {
        const mvop::GegenbauerFamily f2 = mvop::gegenbauer(1.0, nu);
        for (int j = 0; j < 50; ++j) {
            const double x = std::cos(M_PI * (j + 0.5) / 50.0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f2.W(x), Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        }
    }
    out.push_back(mk("gegenbauer.weight-positive", min_eig > 0.0 ? 0.0 : 1.0, 0.5,
                     "min eigenvalue " + std::to_string(min_eig)));

    // ell = 0 scalar collapse against the scalar monic Gegenbauer recurrence.
    const mvop::GegenbauerFamily sc = mvop::gegenbauer(0.0, 1.5);
    const double nu = 1.5;
    const double gamma1 = 1.0 * (1.0 + 2.0 * nu - 1.0) / (4.0 * (1.0 + nu) * nu);
    out.push_back(mk("gegenbauer.scalar-collapse-C1",
                     std::abs(sc.monic_C(1)(0, 0) - gamma1), cfg.abs_tol));
    const double t0 = sc.t(0);
    out.push_back(mk("gegenbauer.scalar-collapse-weight",
                     std::abs(sc.W(0.3)(0, 0) - t0 * std::pow(1.0 - 0.09, nu - 0.5)),
                     cfg.abs_tol));
    return out;
}

std::vector<Check> suite_commutant(const RunConfig& cfg) {
    std::vector<Check> out;
    // Scalar: A = Acal = span{1}.
    {
        std::vector<Eigen::MatrixXcd> moments;
        for (int k = 0; k <= 6; ++k)
            moments.push_back(Eigen::MatrixXcd::Constant(1, 1, 1.0 / (k + 1.0)));
        const auto res = mvop::commutant(moments);
        out.push_back(mk("commutant.scalar",
                         (res.dim_A == 1 && res.dim_Acal == 1) ? 0.0 : 1.0, 0.5));
    }
    // W(x) = [[x^2+x, x], [x, x]] on [0,1]: A trivial, Acal strictly larger.
    {
        std::vector<Eigen::MatrixXcd> moments;
        for (int k = 0; k <= 10; ++k) {
            Eigen::MatrixXcd M(2, 2);
            M(0, 0) = 1.0 / (k + 3.0) + 1.0 / (k + 2.0);
            M(0, 1) = 1.0 / (k + 2.0);
            M(1, 0) = 1.0 / (k + 2.0);
            M(1, 1) = 1.0 / (k + 2.0);
            moments.push_back(M);
        }
        const auto res = mvop::commutant(moments);
        out.push_back(mk("commutant.gram-weight-dimA", std::abs(res.dim_A - 1.0), 0.0,
                         "dim A = " + std::to_string(res.dim_A)));
        out.push_back(mk("commutant.gram-weight-dimAcal", res.dim_Acal >= 2 ? 0.0 : 1.0, 0.5,
                         "dim Acal = " + std::to_string(res.dim_Acal)));
    }
    // Matrix Gegenbauer ell = 1: A = span{I, J}, J the antidiagonal involution.
    {
        const mvop::GegenbauerFamily fam = mvop::gegenbauer(1.0, 1.0);
        const auto res = mvop::commutant(fam.moments(20));
        bool spans = (res.dim_A == 2);
        if (spans) {
            // Project I and J onto the computed basis.
            const int N = fam.size();
            Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(N, N);
            for (int i = 0; i < N; ++i) J(i, N - 1 - i) = 1.0;
            for (const Eigen::MatrixXcd& target :
                 {Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(N, N)), J}) {
                Eigen::MatrixXcd M(N * N, 2 * res.A_basis.size());
                for (std::size_t i = 0; i < res.A_basis.size(); ++i) {
                    M.col(2 * i) = res.A_basis[i].reshaped();
                    M.col(2 * i + 1) = (Complex(0.0, 1.0) * res.A_basis[i]).reshaped();
                }
                const Eigen::VectorXcd t = target.reshaped();
                const Eigen::VectorXcd coef = M.colPivHouseholderQr().solve(t);
                spans = spans && (M * coef - t).norm() < 1e-8;
            }
        }
        out.push_back(mk("commutant.gegenbauer-A-span", spans ? 0.0 : 1.0, 0.5,
                         "dim A = " + std::to_string(res.dim_A)));

        double worst = 0.0;
        const int N = fam.size();
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
        for (int i = 0; i < N; ++i) J(i, N - 1 - i) = 1.0;
        for (int n = 0; n <= 10; ++n) {
            worst = std::max(worst,
                             (J * fam.monic_B(n) - fam.monic_B(n) * J).cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             (J * fam.monic_C(n) - fam.monic_C(n) * J).cwiseAbs().maxCoeff());
            worst = std::max(worst, (J * fam.H(n) - fam.H(n) * J).cwiseAbs().maxCoeff());
        }
        out.push_back(mk("commutant.gegenbauer-J-commutes", worst, cfg.abs_tol));
    }
    return out;
}

std::vector<Check> suite_gauge(const RunConfig& cfg) {
    std::vector<Check> out;
    std::mt19937 rng(cfg.seed + 8);
    const int N = 2, M = 8;
    const BlockRecurrence b = random_block(rng, N, M + 1);
    // Gauge transform with U_0 = I (P_0 = M0^{-1/2} pins the 0th gauge).
    auto Us = std::make_shared<std::vector<Eigen::MatrixXcd>>();
    Us->push_back(Eigen::MatrixXcd::Identity(N, N));
    for (int n = 1; n <= M + 1; ++n) Us->push_back(random_unitary(rng, N));
    BlockRecurrence bt;
    bt.N = N;
    bt.M0 = b.M0;
    bt.A = [b, Us](int n) {
        return Eigen::MatrixXcd(Us->at(n) * b.A(n) * Us->at(n + 1).adjoint());
    };
    bt.B = [b, Us](int n) { return Eigen::MatrixXcd(Us->at(n) * b.B(n) * Us->at(n).adjoint()); };
    const MatrixMeasure m1 = trisolve::block_quadrature(b, M);
    const MatrixMeasure m2 = trisolve::block_quadrature(bt, M);
    double worst = 0.0;
    if (m1.nodes.size() != m2.nodes.size()) {
        worst = 1.0;
    } else {
        for (std::size_t j = 0; j < m1.nodes.size(); ++j) {
            worst = std::max(worst, std::abs(m1.nodes[j] - m2.nodes[j]));
            worst = std::max(worst, (m1.masses[j] - m2.masses[j]).cwiseAbs().maxCoeff());
        }
    }
    out.push_back(mk("gauge.block-quadrature-invariance", worst, 1e-9));

    // PSD masses and total mass = M0.
    double min_eig = 0.0;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& mass : m1.masses) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mass, Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        total += mass;
    }
    out.push_back(mk("gauge.masses-psd", -min_eig, cfg.identity_tol));
    out.push_back(mk("gauge.total-mass", (total - b.M0).cwiseAbs().maxCoeff(),
                     cfg.identity_tol));
    return out;
}

std::vector<Check> suite_matrix_cd(const RunConfig& cfg) {
    std::vector<Check> out;
    std::mt19937 rng(cfg.seed + 9);
    std::uniform_real_distribution<double> ux(-1.5, 1.5);
    double worst = 0.0;
    for (int trial = 0; trial < 15; ++trial) {
        const BlockRecurrence b = random_block(rng, 2 + trial % 2, 21);
        for (int n : {2, 7, 20})
            worst = std::max(worst, mvop::matrix_cd_defect(b, n, ux(rng), ux(rng)));
    }
    out.push_back(mk("matrix-cd.residual", worst, cfg.identity_tol));
    return out;
}

std::vector<Check> suite_degenerate(const RunConfig& cfg) {
    std::vector<Check> out;
    // Rank-1 Gram weight W(x) = u(x) u(x)^*, F with F u = 0 pointwise:
    // the inner product <F, F> vanishes identically.
    const int pts = 24;
    MatrixMeasure mm;
    auto u1 = [](double x) { return 1.0 + x; };
    auto u2 = [](double x) { return x * x - 0.5; };
    for (int j = 0; j < pts; ++j) {
        const double x = -1.0 + 2.0 * (j + 0.5) / pts;
        Eigen::VectorXcd u(2);
        u << u1(x), u2(x);
        mm.nodes.push_back(x);
        mm.masses.push_back((2.0 / pts) * (u * u.adjoint()));
    }
    double worst = 0.0;
    Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(2, 2);
    for (std::size_t j = 0; j < mm.nodes.size(); ++j) {
        const double x = mm.nodes[j];
        Eigen::MatrixXcd F(2, 2);  // rows proportional to (u2, -u1), so F u = 0
        F << u2(x), -u1(x), x * u2(x), -x * u1(x);
        inner += F * mm.masses[j] * F.adjoint();
    }
    worst = inner.cwiseAbs().maxCoeff();
    out.push_back(mk("degenerate.kernel-valued-null", worst, cfg.abs_tol));

    // Rank function of the Gram weight: d = 1 wherever the generator is nonzero.
    bool rank_ok = true;
    for (std::size_t j = 0; j < mm.nodes.size(); ++j) {
        const auto ws = mvop::weight_support(mm.masses[j]);
        rank_ok = rank_ok && ws.d == 1 &&
                  (ws.J * mm.masses[j] - mm.masses[j]).norm() < 1e-10 * mm.masses[j].norm();
    }
    out.push_back(mk("degenerate.rank-one-support", rank_ok ? 0.0 : 1.0, 0.5));

    // Zeros of det P_{n+1} are real: the block truncation eigenvalues make
    // P_{M+1} singular.
    std::mt19937 rng(cfg.seed + 10);
    const BlockRecurrence b = random_block(rng, 2, 7);
    const int M = 5;
    trisolve::BlockTridiag t;
    for (int n = 0; n < M + 1; ++n) {
        t.diag_blocks.push_back(b.B(n));
        if (n < M) t.off_blocks.push_back(b.A(n));
    }
    const auto ed = trisolve::eigh_block_tridiagonal(t);
    double worst_sv = 0.0;
    for (Eigen::Index j = 0; j < ed.values.size(); ++j) {
        const auto pair = mvop::eval_block_pair(b, M + 1, ed.values[j]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pair.P[M + 1]);
        worst_sv = std::max(worst_sv, svd.singularValues().minCoeff() /
                                          svd.singularValues().maxCoeff());
    }
    out.push_back(mk("degenerate.detP-zeros-real", worst_sv, 1e-8));
    return out;
}

std::vector<Check> suite_morse(const RunConfig& cfg, std::optional<double> b_override) {
    std::vector<Check> out;
    std::vector<double> bs = b_override ? std::vector<double>{*b_override}
                                        : std::vector<double>{2.2, 3.7};
    for (double bval : bs) {
        const jmatrix::MorseModel m = jmatrix::morse_model(bval);
        const std::string tag = "b=" + std::to_string(bval);
        const auto formula = jmatrix::morse_bound_states(m);
        const auto eig = jmatrix::morse_block_eigenvalues(m);
        double worst = 0.0;
        for (std::size_t i = 0; i < formula.size(); ++i)
            worst = std::max(worst, std::abs(formula[i] - eig[i]));
        out.push_back(mk("morse.bound-states[" + tag + "]", worst, cfg.identity_tol, tag));
        out.push_back(mk("morse.decoupling[" + tag + "]",
                         std::abs(jmatrix::morse_tridiag(m, m.N).sub), 0.0, tag));

        double worst_exp = 0.0;
        for (int mi = 0; mi < m.N; ++mi)
            for (double z : {0.5, 1.0, 3.0})
                worst_exp = std::max(worst_exp, jmatrix::expansion_defect(m, mi, z));
        out.push_back(mk("morse.expansion-identity[" + tag + "]", worst_exp, 1e-9, tag));

        // Bound-state eigenvectors against the dual Hahn closed form. The
        // H^- recurrence is z P_n = super_n P_{n+1} + diag_n P_n + sub_n P_{n-1}
        // with super_n = (N-1-n) sqrt((n+1)(2b-2N+n+1)), sub_n = (N-n) sqrt(n(2b-2N+n)).
        double worst_dh = 0.0;
        for (int mi = 0; mi < m.N; ++mi) {
            const double z = -std::pow(m.b - mi - 0.5, 2);
            double pm1 = 0.0, p = 1.0;
            for (int n = 0; n < m.N; ++n) {
                const double closed =
                    std::sqrt(poch(2.0 * m.b - 2.0 * m.N + 1.0, n) / std::tgamma(n + 1.0)) *
                    jmatrix::dual_hahn(n, m.N - 1 - mi, 2.0 * m.b - 2.0 * m.N, 0.0, m.N - 1);
                worst_dh = std::max(worst_dh, std::abs(p - closed));
                if (n + 1 < m.N) {
                    const double diag = jmatrix::morse_tridiag(m, n).diag;
                    const double super =
                        (m.N - 1.0 - n) * std::sqrt((n + 1.0) * (2.0 * m.b - 2.0 * m.N + n + 1.0));
                    const double sub =
                        (m.N - double(n)) * std::sqrt(n * (2.0 * m.b - 2.0 * m.N + n));
                    const double next = ((z - diag) * p - sub * pm1) / super;
                    pm1 = p;
                    p = next;
                }
            }
        }
        out.push_back(mk("morse.dual-hahn-eigenvectors[" + tag + "]", worst_dh, 1e-9, tag));

        // Scattering block equals the continuous dual Hahn recurrence.
        double worst_cdh = 0.0;
        for (int n = 0; n <= 12; ++n) {
            const auto [a_hat, b_hat] = jmatrix::cdh_recurrence(m, n);
            const auto row = jmatrix::morse_tridiag(m, m.N + n);
            worst_cdh = std::max(worst_cdh, std::abs(std::abs(row.super) - a_hat));
            worst_cdh = std::max(worst_cdh, std::abs(row.diag - b_hat));
        }
        out.push_back(mk("morse.cdh-identification[" + tag + "]", worst_cdh, cfg.identity_tol, tag));
    }
    return out;
}

std::vector<Check> suite_jacobi_t(const RunConfig&) {
    std::vector<Check> out;
    for (const auto& [a, b, d] : std::vector<std::tuple<double, double, double>>{
             {0.5, 0.5, 0.0}, {0.3, 0.8, 0.25}}) {
        const auto j = jmatrix::jacobi_t_model(a, b, Complex(d, 0.0));
        const std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(d) + ")";
        double worst_band = 0.0, worst_off = 0.0;
        for (int n = 0; n <= 20; ++n) {
            const auto [an, bn] = jmatrix::jacobi_tridiag_coeffs(j, n);
            auto rel = [](double proj, double closed) {
                return std::abs(proj - closed) / std::max(1.0, std::abs(closed));
            };
            worst_band = std::max(worst_band, rel(jmatrix::jacobi_T_project(j, n, n), bn));
            worst_band = std::max(worst_band, rel(jmatrix::jacobi_T_project(j, n, n + 1), an));
            worst_band = std::max(worst_band, rel(jmatrix::jacobi_T_project(j, n + 1, n), an));
        }
        for (int n = 0; n <= 16; n += 4)
            for (int sep = 2; sep <= 4; ++sep)
                worst_off = std::max(worst_off, std::abs(jmatrix::jacobi_T_project(j, n, n + sep)));
        out.push_back(mk("jacobiT.band-matches-closed-form[" + tag + "]", worst_band, 1e-9, tag));
        out.push_back(mk("jacobiT.off-band-vanishes[" + tag + "]", worst_off, 1e-9, tag));
    }
    // Spectrum description sanity.
    const auto sd = jmatrix::jacobi_T_spectrum(jmatrix::jacobi_t_model(0.0, 0.0, Complex(-3.0, 0.0)));
    const bool ok = sd.discrete.size() == 3 && std::abs(sd.discrete[0] - 0.0) < 1e-12 &&
                    std::abs(sd.discrete[1] - 4.0) < 1e-12 &&
                    std::abs(sd.discrete[2] - 12.0) < 1e-12;
    out.push_back(mk("jacobiT.spectrum-enumeration", ok ? 0.0 : 1.0, 0.5));
    const auto sd2 = jmatrix::jacobi_T_spectrum(
        jmatrix::jacobi_t_model(0.3, 0.8, Complex(0.25, 0.7)));
    out.push_back(mk("jacobiT.no-discrete-on-critical-line", sd2.discrete.empty() ? 0.0 : 1.0,
                     0.5));
    return out;
}

std::vector<Check> suite_fiveterm(const RunConfig&) {
    std::vector<Check> out;
    const auto f = jmatrix::five_term_model(0.3, 0.8, -0.16);  // kappa = 0.4i
    double worst_conn = 0.0;
    for (int n = 0; n <= 10; ++n) {
        const auto c = jmatrix::connection_coeffs(f, n);
        for (double x : {-0.7, 0.1, 0.9}) {
            const double lhs = jmatrix::orthonormal_jacobi(n, f.alpha, f.beta, x);
            double rhs = c.alpha_n * jmatrix::orthonormal_jacobi(n, f.alpha + 1, f.beta + 1, x);
            if (n >= 1)
                rhs += c.beta_n * jmatrix::orthonormal_jacobi(n - 1, f.alpha + 1, f.beta + 1, x);
            if (n >= 2)
                rhs += c.gamma_n * jmatrix::orthonormal_jacobi(n - 2, f.alpha + 1, f.beta + 1, x);
            worst_conn = std::max(worst_conn, std::abs(lhs - rhs));
        }
    }
    out.push_back(mk("fiveterm.connection-identity", worst_conn, 1e-10));

    double worst_proj = 0.0;
    for (int n = 0; n <= 8; ++n) {
        const auto cn = jmatrix::fiveterm_coeffs(f, n);
        worst_proj = std::max(worst_proj, std::abs(jmatrix::fiveterm_project(f, n, n + 2) - cn.a));
        worst_proj = std::max(worst_proj, std::abs(jmatrix::fiveterm_project(f, n, n + 1) - cn.b));
        worst_proj = std::max(worst_proj, std::abs(jmatrix::fiveterm_project(f, n, n) - cn.c));
        worst_proj = std::max(worst_proj, std::abs(jmatrix::fiveterm_project(f, n, n + 3)));
    }
    out.push_back(mk("fiveterm.projection-matches-pattern", worst_proj, 1e-8));

    const auto fs = jmatrix::five_term_model(0.3, 0.3, 1.0);
    double worst_sym = 0.0;
    for (int n = 1; n <= 10; ++n)
        worst_sym = std::max(worst_sym, std::abs(jmatrix::connection_coeffs(fs, n).beta_n));
    out.push_back(mk("fiveterm.symmetric-beta-vanishes", worst_sym, 0.0));
    return out;
}

std::vector<Check> suite_fold(const RunConfig& cfg) {
    std::vector<Check> out;
    const auto f = jmatrix::five_term_model(0.3, 0.8, -0.16);
    const BlockRecurrence blk = jmatrix::fold_to_block(f);
    double worst = 0.0;
    for (const Complex lambda : {Complex(-7.0, 0.0), Complex(-2.0, 0.0), Complex(1.0, 1.0)}) {
        const auto u = jmatrix::fiveterm_sequence(f, lambda, Complex(0.7, 0.0),
                                                  Complex(-0.4, 0.2), 34);
        const auto pair = mvop::eval_block_pair(blk, 16, lambda);
        Eigen::Vector2cd U0;
        U0 << u[0], u[1];
        for (int n = 0; n <= 15; ++n) {
            Eigen::Vector2cd Un;
            Un << u[2 * n], u[2 * n + 1];
            const Eigen::Vector2cd pred = pair.P[n] * U0;
            const double scale = std::max({1.0, std::abs(Un[0]), std::abs(Un[1])});
            worst = std::max(worst, (Un - pred).norm() / scale);
        }
    }
    out.push_back(mk("fold.Un-equals-PnU0", worst, 1e-9));

    const Complex z(1.0, 1.0);
    double worst_lo = 0.0;
    for (int k : {1, 5, 12}) {
        const auto [d1, d2] = mvop::liouville_ostrogradsky_defect(blk, k, z);
        worst_lo = std::max(worst_lo, std::max(d1, d2));
    }
    out.push_back(mk("fold.liouville-ostrogradsky", worst_lo, 1e-9));

    // l^2(Z) folding: F_n(z) = diag(phi_n, Phi_{-n-1}) solves the block
    // recurrence for n >= 1.
    const QParams p{0.5, 0.8};
    const BlockRecurrence zfold = mvop::fold_l2z(qkernel::asc_coeffs(p));
    const Complex zz(0.3, 0.4);
    const auto phi = qkernel::phi_plus_window(p, zz, -14, 14);
    const auto Phi = qkernel::phi_minus_window(p, zz, -14, 14);
    auto F = [&](int n) {
        Eigen::Matrix2cd M = Eigen::Matrix2cd::Zero();
        M(0, 0) = phi.at(n);
        M(1, 1) = Phi.at(-n - 1);
        return M;
    };
    double worst_fold = 0.0;
    for (int n = 1; n <= 10; ++n) {
        const Eigen::Matrix2cd lhs = zz * F(n);
        const Eigen::Matrix2cd rhs = zfold.A(n) * F(n + 1) + zfold.B(n) * F(n) +
                                     zfold.A(n - 1).adjoint() * F(n - 1);
        const double scale = std::max(1.0, F(n).norm());
        worst_fold = std::max(worst_fold, (lhs - rhs).norm() / scale);
    }
    out.push_back(mk("fold.l2z-diagonal-solutions", worst_fold, 1e-9));

    // Degenerate 2x2 Gram weights: det == 0, trace > 0 where generators live.
    bool gram_ok = true;
    for (double lam : {-0.8, 0.1, 1.4}) {
        const Complex g0 = std::exp(Complex(0.0, lam)) / (1.0 + lam * lam);
        const Complex g1 = Complex(std::cos(2.0 * lam), std::sin(lam)) * 0.7;
        Eigen::Matrix2cd W1;
        W1 << std::norm(g0), g0 * std::conj(g1), g1 * std::conj(g0), std::norm(g1);
        gram_ok = gram_ok && std::abs(W1.determinant()) < 1e-14 && W1.real().trace() > 0.0;
        gram_ok = gram_ok && mvop::weight_support(W1).d == 1;
    }
    out.push_back(mk("fold.gram-weight-structure", gram_ok ? 0.0 : 1.0, 0.5));
    (void)cfg;
    return out;
}

namespace {

const std::map<std::string, std::function<std::vector<Check>(const RunConfig&)>>& suite_map() {
    static const std::map<std::string, std::function<std::vector<Check>(const RunConfig&)>> m = {
        {"casorati", suite_casorati},
        {"wronskian", suite_wronskian},
        {"qhermite", suite_qhermite},
        {"compactness", suite_compactness},
        {"favard", suite_favard},
        {"interlacing", suite_interlacing},
        {"markov", suite_markov},
        {"cd", suite_cd},
        {"stieltjes", suite_stieltjes},
        {"liouville", suite_liouville},
        {"gegenbauer", suite_gegenbauer},
        {"commutant", suite_commutant},
        {"gauge", suite_gauge},
        {"matrix-cd", suite_matrix_cd},
        {"degenerate", suite_degenerate},
        {"morse", [](const RunConfig& c) { return suite_morse(c, {}); }},
        {"jacobiT", suite_jacobi_t},
        {"fiveterm", suite_fiveterm},
        {"fold", suite_fold},
    };
    return m;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : suite_map()) names.push_back(k);
    return names;
}

bool has_suite(const std::string& name) { return suite_map().count(name) > 0; }

std::vector<Check> run_suite(const std::string& name, const RunConfig& cfg) {
    const auto it = suite_map().find(name);
    if (it == suite_map().end()) throw std::domain_error("unknown verify suite: " + name);
    auto checks = it->second(cfg);
    std::sort(checks.begin(), checks.end(),
              [](const Check& a, const Check& b) { return a.name < b.name; });
    return checks;
}

}  // namespace spectraljacobi::verify
