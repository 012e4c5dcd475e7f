#include "spectraljacobi/families.hpp"

#include <cmath>
#include <memory>

#include <nlohmann/json.hpp>

namespace spectraljacobi::families {

RecurrenceCoeffs legendre() {
    return {[](int n) { return (n + 1.0) / std::sqrt((2.0 * n + 1.0) * (2.0 * n + 3.0)); },
            [](int) { return 0.0; },
            "legendre",
            2.0};
}

RecurrenceCoeffs chebyshev_t() {
    return {[](int n) { return n == 0 ? 1.0 / std::sqrt(2.0) : 0.5; },
            [](int) { return 0.0; },
            "chebyshev_t",
            1.0};
}

RecurrenceCoeffs chebyshev_u() {
    return {[](int) { return 0.5; }, [](int) { return 0.0; }, "chebyshev_u", 1.0};
}

RecurrenceCoeffs hermite() {
    return {[](int n) { return std::sqrt((n + 1.0) / 2.0); },
            [](int) { return 0.0; },
            "hermite",
            std::sqrt(M_PI)};
}

RecurrenceCoeffs laguerre(double alpha) {
    if (!(alpha > -1.0)) throw std::domain_error("laguerre: alpha must be > -1");
    return {[alpha](int n) { return std::sqrt((n + 1.0) * (n + alpha + 1.0)); },
            [alpha](int n) { return 2.0 * n + alpha + 1.0; },
            "laguerre:" + std::to_string(alpha),
            1.0};
}

namespace {

double jacobi_a(double al, double be, int n) {
    const double s = al + be;
    if (n == 0)
        return std::sqrt(4.0 * (al + 1.0) * (be + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0)));
    return std::sqrt(4.0 * (n + 1.0) * (n + al + 1.0) * (n + be + 1.0) * (n + s + 1.0) /
                     ((2.0 * n + s + 2.0) * (2.0 * n + s + 2.0) * (2.0 * n + s + 1.0) *
                      (2.0 * n + s + 3.0)));
}

double jacobi_b(double al, double be, int n) {
    const double s = al + be;
    if (n == 0) return (be - al) / (s + 2.0);
    return (be * be - al * al) / ((2.0 * n + s) * (2.0 * n + s + 2.0));
}

}  // namespace

RecurrenceCoeffs jacobi(double alpha, double beta) {
    if (!(alpha > -1.0) || !(beta > -1.0)) throw std::domain_error("jacobi: need alpha, beta > -1");
    return {[alpha, beta](int n) { return jacobi_a(alpha, beta, n); },
            [alpha, beta](int n) { return jacobi_b(alpha, beta, n); },
            "jacobi:" + std::to_string(alpha) + "," + std::to_string(beta),
            1.0};
}

RecurrenceCoeffs jacobi_unnormalized(double alpha, double beta) {
    RecurrenceCoeffs c = jacobi(alpha, beta);
    c.m0 = std::exp((alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                    std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0));
    return c;
}

RecurrenceCoeffs qinv_hermite(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("qinv_hermite: need 0 < q < 1");
    return {[q](int n) { return std::sqrt(std::pow(q, -(n + 1.0)) * (1.0 - std::pow(q, n + 1.0))); },
            [](int) { return 0.0; },
            "qinv_hermite:" + std::to_string(q),
            1.0};
}

RecurrenceCoeffs from_name(std::string_view name) {
    const auto colon = name.find(':');
    const std::string head(name.substr(0, colon));
    std::vector<double> args;
    if (colon != std::string_view::npos) {
        std::string rest(name.substr(colon + 1));
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t used = 0;
            args.push_back(std::stod(rest.substr(pos), &used));
            pos += used;
            if (pos < rest.size() && rest[pos] == ',') ++pos;
        }
    }
    if (head == "legendre") return legendre();
    if (head == "chebyshev_t") return chebyshev_t();
    if (head == "chebyshev_u") return chebyshev_u();
    if (head == "hermite") return hermite();
    if (head == "laguerre" && args.size() == 1) return laguerre(args[0]);
    if (head == "jacobi" && args.size() == 2) return jacobi(args[0], args[1]);
    if (head == "qinv_hermite" && args.size() == 1) return qinv_hermite(args[0]);
    throw std::domain_error("unknown family '" + std::string(name) +
                            "'; expected legendre, chebyshev_t, chebyshev_u, hermite, "
                            "laguerre:alpha, jacobi:alpha,beta or qinv_hermite:q");
}

RecurrenceCoeffs from_json(const nlohmann::json& j) {
    auto a = std::make_shared<std::vector<double>>(j.at("a").get<std::vector<double>>());
    auto b = std::make_shared<std::vector<double>>(j.at("b").get<std::vector<double>>());
    for (std::size_t k = 0; k < a->size(); ++k)
        if (!((*a)[k] > 0.0))
            throw std::domain_error("coefficient a_" + std::to_string(k) + " must be positive");
    RecurrenceCoeffs c;
    c.a = [a](int n) { return a->at(static_cast<std::size_t>(n)); };
    c.b = [b](int n) { return b->at(static_cast<std::size_t>(n)); };
    c.label = j.value("label", "custom");
    c.m0 = j.value("m0", 1.0);
    if (!(c.m0 > 0.0)) throw std::domain_error("m0 must be positive");
    return c;
}

}  // namespace spectraljacobi::families
