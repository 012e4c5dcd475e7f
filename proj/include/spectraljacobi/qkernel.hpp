#pragma once

#include "spectraljacobi/types.hpp"

namespace spectraljacobi::qkernel {

struct QParams {
    double q;      // 0 < q < 1
    double alpha;  // q < alpha <= 1

    void validate() const;
};

/// (a;q)_n. n < 0 uses (a;q)_{-m} = 1 / prod_{k=1..m} (1 - a q^{-k}).
Complex qpoch(Complex a, double q, int n);
double qpoch(double a, double q, int n);

/// (a;q)_infinity, truncated when the factor deviates from 1 by < 1e-17.
/// Throws std::domain_error for |q| >= 1.
Complex qpoch_inf(Complex a, double q);
double qpoch_inf(double a, double q);

/// 0phi1(-; b; q, z) = sum_k q^{k(k-1)} z^k / ((q;q)_k (b;q)_k).
Complex phi01(Complex b, double q, Complex z);

/// Coefficients of the continuous q^{-1}-Hermite operator on l^2(Z).
double asc_a(const QParams& p, int l);
double asc_b(const QParams& p, int l);
BiInfiniteCoeffs asc_coeffs(const QParams& p);

/// C_l(alpha) = alpha^{2l} q^{l^2 - l/2} sqrt(1 + alpha^2 q^{2l}) / (-alpha^2 q; q)_{2l}.
double asc_Cl(const QParams& p, int l);

/// Single-point series evaluations of the free solutions.
/// phi in S^+_z (square-summable at +inf), Phi in S^-_z.
Complex phi_plus_at(const QParams& p, Complex z, int l);
Complex phi_minus_at(const QParams& p, Complex z, int l);

/// Eigenvector values on an index window.
struct EigenSeq {
    enum class Side { PlusSummable, MinusSummable };
    int l_min = 0;
    std::vector<Complex> values;
    Side side = Side::PlusSummable;

    int l_max() const { return l_min + static_cast<int>(values.size()) - 1; }
    Complex at(int l) const;

    /// Max relative three-term residual at interior indices.
    double residual(const BiInfiniteCoeffs& c, Complex z) const;
};

/// Series where the 0phi1 argument is small, three-term recursion in the
/// dominant direction elsewhere (downward for phi, upward for Phi).
EigenSeq phi_plus_window(const QParams& p, Complex z, int lmin, int lmax);
EigenSeq phi_minus_window(const QParams& p, Complex z, int lmin, int lmax);

/// a_l (v_{l+1} f_l - f_{l+1} v_l). Throws std::domain_error if either window
/// misses l or l+1.
Complex casorati(const EigenSeq& v, const EigenSeq& f, const BiInfiniteCoeffs& c, int l);

/// -z (1/z; q)_infinity.
Complex casorati_closed_form(const QParams& p, Complex z);

struct SpectrumEntry {
    int n;
    double eigenvalue;        // q^n
    EigenSeq vec;             // phi_{q^n} on the window
    double norm_sq_closed;    // Example 2.8 closed form
    double norm_sq_windowed;  // windowed l^2 sum
    double norm_check_error;  // relative difference
};

/// Eigenpairs q^n, phi_{q^n} for n <= nmax. The negative half of the window is
/// evaluated through the proportionality with Phi_{q^n}, which is the stable
/// series on that side.
std::vector<SpectrumEntry> discrete_spectrum(const QParams& p, int nmax, int window = 80);

/// Ratio c with phi_{q^n} = c * Phi_{q^n}.
double spectrum_proportionality(const QParams& p, int n);

/// N-extremal measure: nodes x_l = ((alpha q^l)^{-1} - alpha q^l)/2 for
/// l in [-L, L], mass proportional to alpha^{4l} q^{2l^2-l} (1 + alpha^2 q^{2l}).
DiscreteMeasure nextremal_measure(const QParams& p, int L);

/// Monic continuous q^{-1}-Hermite in the doubled variable xi = 2x:
/// h_{n+1} = xi h_n - q^{-n}(1-q^n) h_{n-1}.
double qih_monic(int n, double q, double xi);

/// q^{-n(n+1)/2} (q;q)_n (-alpha^2, -q/alpha^2, q; q)_infinity.
double qih_norm_rhs(const QParams& p, int n);

/// sum_l mass_l h_n(2 x_l) h_m(2 x_l) over the measure window.
double nextremal_inner(const QParams& p, const DiscreteMeasure& mu, int n, int m);

/// Row-l1 bound of the residual band of L - P_n L, P_n the projection onto
/// span{e_{-n}, ..., e_n}: sup over discarded rows of a_{l-1} + |b_l| + a_l.
double truncation_defect(const QParams& p, int n);

}  // namespace spectraljacobi::qkernel
