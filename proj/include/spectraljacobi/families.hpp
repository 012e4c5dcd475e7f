#pragma once

#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "spectraljacobi/types.hpp"

namespace spectraljacobi::families {

// Built-in orthonormal recurrence families. m0 is the total mass of the
// orthogonality measure; the generated p_n (p_0 = 1) are orthonormal with
// respect to the mass-normalized measure.

RecurrenceCoeffs legendre();                      // dx on [-1,1], m0 = 2
RecurrenceCoeffs chebyshev_t();                   // normalized arcsine weight, m0 = 1
RecurrenceCoeffs chebyshev_u();                   // normalized semicircle, m0 = 1
RecurrenceCoeffs hermite();                       // exp(-x^2) dx, m0 = sqrt(pi)
RecurrenceCoeffs laguerre(double alpha);          // normalized x^a e^-x, m0 = 1
RecurrenceCoeffs jacobi(double alpha, double beta);              // normalized, m0 = 1
RecurrenceCoeffs jacobi_unnormalized(double alpha, double beta); // (1-x)^a (1+x)^b dx
RecurrenceCoeffs qinv_hermite(double q);          // continuous q^{-1}-Hermite, m0 = 1

/// Parses "legendre", "chebyshev_t", "chebyshev_u", "laguerre:alpha",
/// "jacobi:alpha,beta", "qinv_hermite:q". Throws std::domain_error otherwise.
RecurrenceCoeffs from_name(std::string_view name);

/// {"label": ..., "m0": ..., "a": [...], "b": [...]}; requesting an index
/// beyond the stored arrays throws std::out_of_range.
RecurrenceCoeffs from_json(const nlohmann::json& j);

}  // namespace spectraljacobi::families
