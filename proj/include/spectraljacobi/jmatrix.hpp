#pragma once

#include <span>

#include "spectraljacobi/types.hpp"
#include "spectraljacobi/trisolve.hpp"

namespace spectraljacobi::jmatrix {

// ---------------------------------------------------------------- Morse model

/// Schroedinger operator with Morse potential, tridiagonalized in the
/// Laguerre-type basis y_n. Requires b > 0, b not within 1e-8 of 1/2 + N.
struct MorseModel {
    double b;
    int N;  // #{n : n < b - 1/2} = floor(b + 1/2)
};

MorseModel morse_model(double b);

struct TridiagRow {
    double sub, diag, super;
};

/// Row n of the symmetric tridiagonal form; sub(n+1) == super(n), and
/// sub(N) == 0 splits off the N-dimensional bound-state block.
TridiagRow morse_tridiag(const MorseModel& m, int n);

/// {-(b-m-1/2)^2 : m < b-1/2}, ascending.
std::vector<double> morse_bound_states(const MorseModel& m);

/// Eigenvalues of the N x N restriction (rows 0..N-1), ascending.
std::vector<double> morse_block_eigenvalues(const MorseModel& m);

// ------------------------------------------------- terminating hypergeometrics

/// Terminating generalized hypergeometric sum
///   sum_k prod_i (num_i)_k / prod_j (den_j)_k * x^k / k!
/// with compensated summation. Some numerator parameter must be a nonpositive
/// integer within 1e-12; termination index <= 200. A denominator parameter
/// hitting a nonpositive integer before termination throws std::domain_error.
struct HypTerminating {
    std::vector<Complex> num;
    std::vector<Complex> den;
    Complex arg;

    Complex eval() const;
};

double laguerre(int n, double alpha, double x);
double dual_hahn(int n, int x, double gamma, double delta, int Ncap);
double cdh_S(int n, double y2, double a, double b, double c);
double gegenbauer_c(int n, double nu, double x);

// ------------------------------------------------------ Morse spectral data

/// Relative residual of the bound-state expansion identity
///   sum_{n<N} R_n(lambda(N-1-m)) L_n^{(2b-2N)}(z) = C z^{N-1-m} L_m^{(2b-2m-1)}(z).
double expansion_defect(const MorseModel& m, int mIdx, double z);

/// Continuous-dual-Hahn weight density at gamma > 0.
double cdh_weight(const MorseModel& m, double gamma);

/// Orthonormal scattering polynomial P_n(gamma^2).
double cdh_orthonormal_P(const MorseModel& m, int n, double gamma2);

/// int_0^inf P_n P_m w dgamma by composite Gauss-Legendre panels, extended
/// until the running tail falls below tol * scale.
double cdh_inner(const MorseModel& m, int n, int k, double tol = 1e-9);

/// Closed-form orthonormal recurrence of the scattering block (rows n >= N,
/// shifted): a_n = (n+1) sqrt((n+N+1)(n+2b-N+1)), b_n from the continuous
/// dual Hahn data at (b+1/2, N-b+1/2, b-N+1/2).
std::pair<double, double> cdh_recurrence(const MorseModel& m, int n);

// ------------------------------------------------------ Jacobi T = (1-x) (L+gamma)

struct JacobiTModel {
    double alpha, beta;  // > -1
    Complex delta;       // real, or Re delta = (beta-alpha)/2
    double gamma;        // -(alpha+delta+1)(beta-delta+1), real by assumption

    void validate() const;
};

JacobiTModel jacobi_t_model(double alpha, double beta, Complex delta);

/// Closed-form recursion coefficients of T in the orthonormal Jacobi basis.
std::pair<double, double> jacobi_tridiag_coeffs(const JacobiTModel& j, int n);

/// <T phi_n, phi_m> by Gauss-Jacobi quadrature of order >= n+m+4; derivatives
/// of phi_n via the exact Jacobi parameter-shift identity.
double jacobi_T_project(const JacobiTModel& j, int n, int m);

struct SpectrumDescription {
    double ac_edge;                 // AC spectrum is (-inf, ac_edge)
    std::vector<double> discrete;   // ascending; at most one family contributes
    int discrete_family;            // 0 none, 1 alpha+delta family, 2 beta-delta family
};

SpectrumDescription jacobi_T_spectrum(const JacobiTModel& j);

// ------------------------------------------- five-term operator T^(alpha,beta;kappa)

/// Stores kappa^2 (real: kappa in R>=0 gives kappa2 >= 0, kappa in iR>0 gives
/// kappa2 < 0); rho = (kappa^2 - (alpha+beta+3)^2)/4 is real either way.
struct FiveTermModel {
    double alpha, beta;  // beta >= alpha > -1
    double kappa2;
    double rho;
    double K;  // 4(alpha+1)(beta+1)/((alpha+beta+2)(alpha+beta+3))

    void validate() const;
};

FiveTermModel five_term_model(double alpha, double beta, double kappa2);

struct ConnectionCoeffs {
    double alpha_n, beta_n, gamma_n;  // phi_n = a_n Phi_n + b_n Phi_{n-1} + g_n Phi_{n-2}
};

ConnectionCoeffs connection_coeffs(const FiveTermModel& f, int n);

struct FiveTermCoeffs {
    double a, b, c;  // T f_n = a_n f_{n+2} + b_n f_{n+1} + c_n f_n + b_{n-1} f_{n-1} + a_{n-2} f_{n-2}
};

FiveTermCoeffs fiveterm_coeffs(const FiveTermModel& f, int n);

/// <T phi_n, phi_m> for the differential form of T^(alpha,beta;kappa).
double fiveterm_project(const FiveTermModel& f, int n, int m);

/// Orthonormal Jacobi value phi_n^{(alpha,beta)}(x) (unit-mass weight).
double orthonormal_jacobi(int n, double alpha, double beta, double x);

/// 2x2 block folding of a scalar five-term recurrence:
/// A_n = [[a_{2n}, 0], [b_{2n+1}, a_{2n+1}]], B_n = [[c_{2n}, b_{2n}], [b_{2n}, c_{2n+1}]],
/// P_0 = I (M0 = I). Throws std::domain_error naming the index if some a_n = 0.
BlockRecurrence fold_to_block(std::function<double(int)> a,
                              std::function<double(int)> b,
                              std::function<double(int)> c);

BlockRecurrence fold_to_block(const FiveTermModel& f);

/// Generates u_0.. by the scalar five-term relation at lambda from seeds
/// (u0, u1); entries below index 0 are treated as absent.
std::vector<Complex> fiveterm_sequence(const FiveTermModel& f, Complex lambda,
                                       Complex u0, Complex u1, int count);

}  // namespace spectraljacobi::jmatrix
