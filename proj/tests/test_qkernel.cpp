#include <doctest.h>

#include <cmath>

#include "spectraljacobi/qkernel.hpp"

namespace sj = spectraljacobi;
namespace qk = sj::qkernel;
using sj::Complex;

TEST_CASE("qpoch basics") {
    CHECK(qk::qpoch(0.37, 0.5, 0) == 1.0);
    CHECK(qk::qpoch_inf(1.0, 0.5) == 0.0);  // first factor vanishes
    // (q;q)_inf at q = 1/2, frozen from the direct product
    CHECK(qk::qpoch_inf(0.5, 0.5) == doctest::Approx(0.2887880951).epsilon(1e-10));
    CHECK_THROWS_AS(qk::qpoch_inf(0.5, 1.0), std::domain_error);
    // negative index identity (a;q)_{-n} (a q^{-n};q)_n = 1
    const Complex a(0.3, 0.1);
    const double q = 0.6;
    CHECK(std::abs(qk::qpoch(a, q, -4) * qk::qpoch(a * std::pow(q, -4), q, 4) - 1.0) < 1e-14);
}

TEST_CASE("phi01 limit reproduces (z;q)_inf") {
    // lim_{x->0} 0phi1(-; 1/x; q, z/x) = (z;q)_inf; convergence is O(x).
    const double q = 0.5, z = 0.3;
    const double x = 1e-13;
    const double limit = qk::phi01(1.0 / x, q, z / x).real();
    CHECK(limit == doctest::Approx(qk::qpoch_inf(z, q)).epsilon(1e-10));
}

TEST_CASE("asc_coeffs values and asymptotics") {
    const qk::QParams p{0.25, 1.0};
    // direct evaluation at l = 0
    const double a0 = qk::asc_a(p, 0);
    CHECK(a0 == doctest::Approx((std::sqrt(0.25) / 1.25) / std::sqrt(2.0 * 1.0625))
                    .epsilon(1e-15));
    // a_l -> alpha^2 q^{2l+1/2} as l -> +infinity
    for (int l : {15, 20}) {
        const double ratio = qk::asc_a(p, l) / std::pow(p.q, 2.0 * l + 0.5);
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-6));
    }
    // b_l / (alpha^2 (1+q) q^{2l-1}) -> 1
    const qk::QParams p2{0.5, 0.8};
    for (int l : {18, 24}) {
        const double ratio =
            qk::asc_b(p2, l) / (0.64 * 1.5 * std::pow(0.5, 2.0 * l - 1.0));
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("alpha -> 1/alpha reflection of the coefficients") {
    // L(1/alpha) = V L(alpha) V* with V e_l = e_{-l} means
    // a_l(1/alpha) = a_{-l-1}(alpha) and b_l(1/alpha) = b_{-l}(alpha).
    const double q = 0.45, alpha = 0.7;
    const qk::QParams p{q, alpha};
    auto a_inv = [&](int l) {
        const double ia2 = 1.0 / (alpha * alpha);
        return (ia2 * std::pow(q, 2.0 * l + 0.5) / (1.0 + ia2 * std::pow(q, 2.0 * l + 1.0))) /
               std::sqrt((1.0 + ia2 * std::pow(q, 2.0 * l)) *
                         (1.0 + ia2 * std::pow(q, 2.0 * l + 2.0)));
    };
    auto b_inv = [&](int l) {
        const double ia2 = 1.0 / (alpha * alpha);
        return ia2 * (1.0 + q) * std::pow(q, 2.0 * l - 1.0) /
               ((1.0 + ia2 * std::pow(q, 2.0 * l + 1.0)) *
                (1.0 + ia2 * std::pow(q, 2.0 * l - 1.0)));
    };
    for (int l = -20; l <= 20; ++l) {
        CHECK(a_inv(l) == doctest::Approx(qk::asc_a(p, -l - 1)).epsilon(1e-13));
        CHECK(b_inv(l) == doctest::Approx(qk::asc_b(p, -l)).epsilon(1e-13));
    }
}

TEST_CASE("free solutions satisfy the recurrence on a window") {
    const qk::QParams p{0.5, 0.8};
    const Complex z(0.3, 0.4);
    const auto coeffs = qk::asc_coeffs(p);
    const auto phi = qk::phi_plus_window(p, z, -10, 10);
    const auto Phi = qk::phi_minus_window(p, z, -10, 10);
    CHECK(phi.residual(coeffs, z) < 1e-9);
    CHECK(Phi.residual(coeffs, z) < 1e-9);
    // l^2 decay at +infinity: the tail ratio drops below q.
    const double tail_ratio = std::abs(phi.at(10)) / std::abs(phi.at(9));
    CHECK(tail_ratio < p.q);
}

TEST_CASE("casorati of identical solutions vanishes") {
    const qk::QParams p{0.5, 0.8};
    const Complex z(1.0, 0.7);
    const auto phi = qk::phi_plus_window(p, z, -3, 4);
    CHECK(std::abs(qk::casorati(phi, phi, qk::asc_coeffs(p), 0)) == 0.0);
    CHECK_THROWS_AS(qk::casorati(phi, phi, qk::asc_coeffs(p), 12), std::domain_error);
}

TEST_CASE("casorati closed form and l-independence") {
    const qk::QParams p{0.5, 0.8};
    const Complex z(0.0, 2.0);
    const auto coeffs = qk::asc_coeffs(p);
    const auto phi = qk::phi_plus_window(p, z, -6, 6);
    const auto Phi = qk::phi_minus_window(p, z, -6, 6);
    const Complex closed = qk::casorati_closed_form(p, z);
    for (int l = -5; l <= 5; ++l)
        CHECK(std::abs(qk::casorati(phi, Phi, coeffs, l) - closed) < 1e-8 * std::abs(z));
}

TEST_CASE("casorati vanishes at the eigenvalues q^n") {
    const qk::QParams p{0.5, 0.8};
    const auto coeffs = qk::asc_coeffs(p);
    for (int n = 0; n <= 6; ++n) {
        const Complex zn(std::pow(p.q, n), 0.0);
        const auto phi = qk::phi_plus_window(p, zn, 0, 1);
        const auto Phi = qk::phi_minus_window(p, zn, 0, 1);
        CHECK(std::abs(qk::casorati(phi, Phi, coeffs, 0)) < 1e-9);
    }
}

TEST_CASE("discrete spectrum: norms, proportionality, orthogonality") {
    const qk::QParams p{0.5, 0.8};
    const auto spec = qk::discrete_spectrum(p, 6, 80);
    REQUIRE(spec.size() == 7);
    for (const auto& e : spec) {
        CHECK(e.eigenvalue == doctest::Approx(std::pow(p.q, e.n)).epsilon(1e-15));
        CHECK(e.norm_check_error < 1e-8);
    }
    // proportionality between phi and Phi at z = q^n, checked where both
    // series are well conditioned, and globally through the window residual
    // (a wrong constant would break the three-term relation at the seam)
    const auto coeffs = qk::asc_coeffs(p);
    for (int n : {0, 1, 2, 3}) {
        const Complex zn(std::pow(p.q, n), 0.0);
        const double ratio = qk::spectrum_proportionality(p, n);
        for (int l = 0; l <= 2; ++l) {
            const Complex lhs = qk::phi_plus_at(p, zn, l);
            const Complex rhs = ratio * qk::phi_minus_at(p, zn, l);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
        }
        CHECK(spec[n].vec.residual(coeffs, zn) < 1e-9);
    }
    for (std::size_t i = 0; i < spec.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Complex dot = 0.0;
            for (int l = -80; l <= 80; ++l)
                dot += spec[i].vec.at(l) * std::conj(spec[j].vec.at(l));
            CHECK(std::abs(dot) <
                  1e-8 * std::sqrt(spec[i].norm_sq_windowed * spec[j].norm_sq_windowed));
        }
}

TEST_CASE("no l^2 solution at eigenvalue zero") {
    const qk::QParams p{0.5, 0.8};
    const double q = p.q, a2 = p.alpha * p.alpha;
    // Exercise solutions at z = 0; any combination has divergent windowed norm.
    auto u1 = [&](int l) {
        return ((l % 2 == 0) ? 1.0 : -1.0) * std::pow(q, -0.5 * l) *
               std::sqrt(1.0 + a2 * std::pow(q, 2.0 * l));
    };
    auto u2 = [&](int l) {
        return ((l % 2 == 0) ? 1.0 : -1.0) * std::pow(q, -1.5 * l) * (1.0 - std::pow(q, l)) *
               (1.0 + a2 * std::pow(q, l)) * std::sqrt(1.0 + a2 * std::pow(q, 2.0 * l));
    };
    // both solve the z = 0 recurrence
    const auto coeffs = qk::asc_coeffs(p);
    for (int l = -8; l <= 8; ++l) {
        const double r1 = coeffs.a(l) * u1(l + 1) + coeffs.b(l) * u1(l) + coeffs.a(l - 1) * u1(l - 1);
        const double r2 = coeffs.a(l) * u2(l + 1) + coeffs.b(l) * u2(l) + coeffs.a(l - 1) * u2(l - 1);
        CHECK(std::abs(r1) < 1e-9 * std::abs(u1(l)));
        CHECK(std::abs(r2) < 1e-9 * std::max(1.0, std::abs(u2(l))));
    }
    // u1 grows at +inf, u2 grows at -inf; c1 u1 + c2 u2 stays out of l^2(window 60)
    for (double c2 : {0.0, 0.3, -1.0}) {
        double tail = 0.0;
        for (int l = 40; l <= 60; ++l) tail += std::norm(u1(l) + c2 * u2(l));
        for (int l = -60; l <= -40; ++l) tail += std::norm(u1(l) + c2 * u2(l));
        CHECK(tail > 1e6);
    }
}

TEST_CASE("N-extremal measure orthogonality") {
    const qk::QParams p{0.5, 0.8};
    const auto mu = qk::nextremal_measure(p, 40);
    // n = m = 0: the mass sum equals (-a^2, -q/a^2, q; q)_inf
    const double total = qk::nextremal_inner(p, mu, 0, 0);
    CHECK(std::abs(total - qk::qih_norm_rhs(p, 0)) < 1e-10 * qk::qih_norm_rhs(p, 0));
    // direct-summation oracle for a cross term
    CHECK(std::abs(qk::nextremal_inner(p, mu, 2, 5)) < 1e-9);
    for (int n = 0; n <= 8; ++n) {
        const double s = qk::nextremal_inner(p, mu, n, n);
        CHECK(std::abs(s - qk::qih_norm_rhs(p, n)) < 1e-8 * qk::qih_norm_rhs(p, n));
    }
}

TEST_CASE("alpha -> alpha q relabels the mass points") {
    const qk::QParams p{0.5, 0.9};
    const qk::QParams shifted{0.5, 0.9 * 0.5};
    // x_l(alpha q) = x_{l+1}(alpha)
    const auto mu = qk::nextremal_measure(p, 10);
    for (int l = -9; l <= 9; ++l) {
        const double x_shift =
            0.5 * (1.0 / (shifted.alpha * std::pow(0.5, l)) - shifted.alpha * std::pow(0.5, l));
        CHECK(x_shift == doctest::Approx(mu.nodes[(l + 1) + 10]).epsilon(1e-13));
    }
}

TEST_CASE("truncation defect bounds and decay") {
    const qk::QParams p{0.5, 0.8};
    std::vector<double> d;
    for (int n = 5; n <= 30; ++n) d.push_back(qk::truncation_defect(p, n));
    for (std::size_t i = 1; i < d.size(); ++i) {
        CHECK(d[i] <= d[i - 1]);                    // monotone nonincreasing
        CHECK(d[i] / d[i - 1] <= p.q * 1.1);        // decay-rate upper bound
    }
    // Schur-test oracle: the defect is below 3 * max over discarded rows.
    for (int n : {5, 12, 20}) {
        double rowmax = 0.0;
        for (int l = n + 1; l <= n + 50; ++l) {
            rowmax = std::max(rowmax,
                              qk::asc_a(p, l) + std::abs(qk::asc_b(p, l)) + qk::asc_a(p, l - 1));
            rowmax = std::max(rowmax, qk::asc_a(p, -l) + std::abs(qk::asc_b(p, -l)) +
                                          qk::asc_a(p, -l - 1));
        }
        CHECK(qk::truncation_defect(p, n) <= 3.0 * rowmax);
    }
}

TEST_CASE("QParams validation") {
    CHECK_THROWS_AS(qk::QParams({1.2, 0.9}).validate(), std::domain_error);
    CHECK_THROWS_AS(qk::QParams({0.5, 0.4}).validate(), std::domain_error);
    CHECK_NOTHROW(qk::QParams({0.5, 1.0}).validate());
}
