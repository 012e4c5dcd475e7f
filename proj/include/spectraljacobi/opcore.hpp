#pragma once

#include "spectraljacobi/types.hpp"

namespace spectraljacobi::opcore {

/// First- and second-kind values p_0..p_n, r_0..r_n at a point.
/// p_0 = 1, r_0 = 0, r_1 = 1/a_0.
struct PolyPair {
    std::vector<Complex> p;
    std::vector<Complex> r;
};

/// PolyPair plus simultaneously propagated derivatives.
struct PolyPairDeriv {
    std::vector<Complex> p, r, dp, dr;
};

PolyPair eval_pair(const RecurrenceCoeffs& c, int n, Complex z);
PolyPairDeriv eval_pair_deriv(const RecurrenceCoeffs& c, int n, Complex z);

/// Monic values pi_n(z) = p_n(z) * prod_{k<n} a_k.
std::vector<Complex> monic_values(const RecurrenceCoeffs& c, int n, Complex z);

/// Zeros of p_n: eigenvalues of the n x n Jacobi truncation, real and simple.
std::vector<double> zeros(const RecurrenceCoeffs& c, int n);

/// -r_n(z)/p_n(z); converges to w(z) = int (x-z)^{-1} dmu(x) for determinate
/// problems (measure normalized to unit mass). Requires Im z != 0.
Complex markov_stieltjes(const RecurrenceCoeffs& c, Complex z, int n);

/// sum_{k<n} p_k(x) p_k(y), computed in Christoffel-Darboux form; the
/// confluent derivative form is used at x == y.
double cd_kernel(const RecurrenceCoeffs& c, int n, double x, double y);

/// int_0^infty x^n e^{-gamma^2 ln^2 x} (1 + r sin(2 pi gamma^2 ln x)) dx
/// via y = gamma ln x - (n+1)/(2 gamma) and Gauss-Hermite quadrature.
/// The value is independent of r. Throws std::runtime_error with the
/// disagreement estimate if two quadrature levels do not match.
double lognormal_moment(int n, double gamma, double r);

/// a_k (p_{k+1} r_k - r_{k+1} p_k) + 1, maximized over k < n (the Wronskian
/// is identically -1 from the initial values).
double wronskian_drift(const RecurrenceCoeffs& c, int n, Complex z);

}  // namespace spectraljacobi::opcore
