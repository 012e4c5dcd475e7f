#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spectraljacobi/families.hpp"
#include "spectraljacobi/jmatrix.hpp"
#include "spectraljacobi/mvop.hpp"
#include "spectraljacobi/opcore.hpp"
#include "spectraljacobi/qkernel.hpp"
#include "spectraljacobi/trisolve.hpp"
#include "spectraljacobi/verify.hpp"

namespace sj = spectraljacobi;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitAccuracy = 3;

void emit(const sj::verify::RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw std::runtime_error("cannot open output file " + cfg.output);
        out << text;
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string measure_csv(const sj::DiscreteMeasure& mu) {
    std::ostringstream os;
    os << "node,weight\n";
    for (Eigen::Index i = 0; i < mu.nodes.size(); ++i)
        os << format_double(mu.nodes[i]) << "," << format_double(mu.weights[i]) << "\n";
    return os.str();
}

json measure_json(const sj::DiscreteMeasure& mu) {
    json j;
    j["schema"] = "spectraljacobi/1";
    j["nodes"] = std::vector<double>(mu.nodes.data(), mu.nodes.data() + mu.nodes.size());
    j["weights"] = std::vector<double>(mu.weights.data(), mu.weights.data() + mu.weights.size());
    j["total_mass"] = mu.total_mass;
    return j;
}

sj::BlockRecurrence block_from_json(const json& j) {
    const int N = j.at("N").get<int>();
    auto As = std::make_shared<std::vector<Eigen::MatrixXcd>>();
    auto Bs = std::make_shared<std::vector<Eigen::MatrixXcd>>();
    for (const auto& entry : j.at("coefficients")) {
        Eigen::MatrixXcd A(N, N), B(N, N);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) {
                A(r, c) = entry.at("A").at(r).at(c).get<double>();
                B(r, c) = entry.at("B").at(r).at(c).get<double>();
            }
        As->push_back(A);
        Bs->push_back(B);
    }
    sj::BlockRecurrence b;
    b.N = N;
    b.M0 = Eigen::MatrixXcd::Identity(N, N);
    if (j.contains("M0")) {
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) b.M0(r, c) = j.at("M0").at(r).at(c).get<double>();
    }
    b.A = [As](int n) { return As->at(static_cast<std::size_t>(n)); };
    b.B = [Bs](int n) { return Bs->at(static_cast<std::size_t>(n)); };
    return b;
}

std::string checks_report(const std::vector<sj::verify::Check>& checks, const std::string& format,
                          const std::string& suite) {
    if (format == "json") {
        json j;
        j["schema"] = "spectraljacobi/1";
        j["suite"] = suite;
        j["checks"] = json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name},
                                   {"residual", c.residual},
                                   {"tol", c.tol},
                                   {"pass", c.pass},
                                   {"context", c.context}});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "check,residual,tol,pass\n";
    for (const auto& c : checks)
        os << c.name << "," << format_double(c.residual) << "," << format_double(c.tol) << ","
           << (c.pass ? "1" : "0") << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectraljacobi: Jacobi-operator spectral toolkit"};
    app.require_subcommand(1);

    sj::verify::RunConfig cfg;
    try {
        cfg = sj::verify::RunConfig::from_environment();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitDomain;
    }

    std::string output_flag, format_flag;
    app.add_option("--output", output_flag, "output file path (default stdout)");
    app.add_option("--format", format_flag, "output format: csv|json");

    // quad
    auto* quad = app.add_subcommand("quad", "Gauss quadrature rule of a named family");
    std::string quad_family = "legendre";
    int quad_order = 2;
    double quad_mass = -1.0;
    quad->add_option("--family", quad_family, "family name (see README)");
    quad->add_option("--order", quad_order, "number of nodes");
    quad->add_option("--mass", quad_mass, "total mass override");

    // ops
    auto* ops = app.add_subcommand("ops", "scalar polynomial evaluations");
    std::string ops_family = "legendre";
    int ops_degree = 5;
    double ops_x = 0.0, ops_y = 1.0;
    bool ops_markov = false;
    ops->add_option("--family", ops_family);
    ops->add_option("--degree", ops_degree);
    ops->add_option("--point", ops_x, "evaluation point (real part)");
    ops->add_option("--imag", ops_y, "imaginary part for Markov evaluation");
    ops->add_flag("--markov", ops_markov, "report the Markov approximant instead of values");

    // qhermite
    auto* qh = app.add_subcommand("qhermite", "continuous q^{-1}-Hermite spectral report");
    double qh_q = 0.5, qh_alpha = 0.8;
    int qh_nmax = 6, qh_window = -1;
    qh->add_option("--q", qh_q);
    qh->add_option("--alpha", qh_alpha);
    qh->add_option("--nmax", qh_nmax);
    qh->add_option("--window", qh_window, "l^2(Z) window (default from config)");

    // mvop
    auto* mv = app.add_subcommand("mvop", "block recurrence quadrature and diagnostics");
    std::string mv_input;
    int mv_degree = -1;
    mv->add_option("--input", mv_input, "BlockRecurrence JSON file")->required();
    mv->add_option("--degree", mv_degree, "truncation level");

    // gegenbauer
    auto* geg = app.add_subcommand("gegenbauer", "matrix Gegenbauer family data");
    double geg_ell = 1.0, geg_nu = 1.5;
    int geg_nmax = 5;
    geg->add_option("--ell", geg_ell);
    geg->add_option("--nu", geg_nu);
    geg->add_option("--nmax", geg_nmax);

    // morse
    auto* morse = app.add_subcommand("morse", "Morse bound-state table");
    double morse_b = 2.2;
    morse->add_option("--b", morse_b);

    // jacobiT
    auto* jt = app.add_subcommand("jacobiT", "tridiagonality heatmap of T = (1-x)(L+gamma)");
    double jt_alpha = 0.5, jt_beta = 0.5, jt_delta = 0.0;
    int jt_nmax = 10;
    jt->add_option("--alpha", jt_alpha);
    jt->add_option("--beta", jt_beta);
    jt->add_option("--delta", jt_delta);
    jt->add_option("--nmax", jt_nmax);

    // fiveterm
    auto* ft = app.add_subcommand("fiveterm", "five-term coefficients of T^(alpha,beta;kappa)");
    double ft_alpha = 0.3, ft_beta = 0.8, ft_kappa2 = -0.16;
    int ft_nmax = 10;
    ft->add_option("--alpha", ft_alpha);
    ft->add_option("--beta", ft_beta);
    ft->add_option("--kappa2", ft_kappa2, "kappa^2 (negative for imaginary kappa)");
    ft->add_option("--nmax", ft_nmax);

    // fold
    auto* fold = app.add_subcommand("fold", "2x2 folding report of the five-term operator");
    double fd_alpha = 0.3, fd_beta = 0.8, fd_kappa2 = -0.16;
    int fd_nmax = 8;
    fold->add_option("--alpha", fd_alpha);
    fold->add_option("--beta", fd_beta);
    fold->add_option("--kappa2", fd_kappa2);
    fold->add_option("--nmax", fd_nmax);

    // verify
    auto* ver = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    double ver_b = -1.0;
    ver->add_option("suite", suite, "suite name");
    ver->add_option("--b", ver_b, "Morse b override (morse suite only)");

    // Let --output/--format appear after the subcommand as well.
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (!output_flag.empty()) cfg.output = output_flag;
    if (!format_flag.empty()) cfg.format = format_flag;

    try {
        cfg.validate();
        if (quad->parsed()) {
            const sj::RecurrenceCoeffs fam = sj::families::from_name(quad_family);
            const double m0 = quad_mass > 0.0 ? quad_mass : fam.m0;
            const sj::DiscreteMeasure mu = sj::trisolve::gauss_quadrature(fam, quad_order, m0);
            const double defect =
                sj::trisolve::orthonormality_defect(mu, fam, std::min(quad_order, 12));
            if (defect > cfg.quadrature_tol) {
                std::cerr << "accuracy failure: orthonormality defect " << defect << "\n";
                return kExitAccuracy;
            }
            emit(cfg, cfg.format == "json" ? measure_json(mu).dump(2) + "\n" : measure_csv(mu));
        } else if (ops->parsed()) {
            const sj::RecurrenceCoeffs fam = sj::families::from_name(ops_family);
            if (ops_markov) {
                const sj::Complex w =
                    sj::opcore::markov_stieltjes(fam, {ops_x, ops_y}, ops_degree);
                json j{{"schema", "spectraljacobi/1"},
                       {"family", fam.label},
                       {"z", {ops_x, ops_y}},
                       {"degree", ops_degree},
                       {"markov", {w.real(), w.imag()}}};
                emit(cfg, j.dump(2) + "\n");
            } else {
                const auto pair = sj::opcore::eval_pair(fam, ops_degree, {ops_x, 0.0});
                const auto zs = sj::opcore::zeros(fam, ops_degree);
                std::ostringstream os;
                os << "n,p_n,r_n,zero_n\n";
                for (int n = 0; n <= ops_degree; ++n)
                    os << n << "," << format_double(pair.p[n].real()) << ","
                       << format_double(pair.r[n].real()) << ","
                       << (n < ops_degree ? format_double(zs[n]) : "") << "\n";
                emit(cfg, os.str());
            }
        } else if (qh->parsed()) {
            const sj::qkernel::QParams p{qh_q, qh_alpha};
            p.validate();
            const int window = qh_window > 0 ? qh_window : std::max(60, cfg.window);
            const auto spec = sj::qkernel::discrete_spectrum(p, qh_nmax, window);
            json j{{"schema", "spectraljacobi/1"}, {"q", qh_q}, {"alpha", qh_alpha}};
            j["spectrum"] = json::array();
            for (const auto& e : spec)
                j["spectrum"].push_back({{"n", e.n},
                                         {"eigenvalue", e.eigenvalue},
                                         {"norm_sq", e.norm_sq_closed},
                                         {"norm_check_error", e.norm_check_error}});
            j["wronskian_checks"] = json::array();
            const auto coeffs = sj::qkernel::asc_coeffs(p);
            for (const sj::Complex z : {sj::Complex(0.0, 2.0), sj::Complex(0.3, 0.4)}) {
                const auto v = sj::qkernel::phi_plus_window(p, z, -5, 6);
                const auto f = sj::qkernel::phi_minus_window(p, z, -5, 6);
                const sj::Complex w = sj::qkernel::casorati(v, f, coeffs, 0);
                const sj::Complex closed = sj::qkernel::casorati_closed_form(p, z);
                j["wronskian_checks"].push_back(
                    {{"z", {z.real(), z.imag()}}, {"error", std::abs(w - closed)}});
            }
            emit(cfg, j.dump(2) + "\n");
        } else if (mv->parsed()) {
            std::ifstream in(mv_input);
            if (!in) throw std::domain_error("cannot open " + mv_input);
            json jin;
            in >> jin;
            const sj::BlockRecurrence b = block_from_json(jin);
            const int M = mv_degree > 0 ? mv_degree : std::min(cfg.degree, 12);
            const sj::MatrixMeasure mm = sj::trisolve::block_quadrature(b, M);
            if (cfg.format == "csv") {
                // node, then the mass matrix in row-major order
                std::ostringstream os;
                os << "node";
                for (int r = 0; r < b.N; ++r)
                    for (int cidx = 0; cidx < b.N; ++cidx)
                        os << ",mass_" << r << cidx << "_re,mass_" << r << cidx << "_im";
                os << "\n";
                for (std::size_t jn = 0; jn < mm.nodes.size(); ++jn) {
                    os << format_double(mm.nodes[jn]);
                    for (int r = 0; r < b.N; ++r)
                        for (int cidx = 0; cidx < b.N; ++cidx)
                            os << "," << format_double(mm.masses[jn](r, cidx).real()) << ","
                               << format_double(mm.masses[jn](r, cidx).imag());
                    os << "\n";
                }
                emit(cfg, os.str());
            } else {
                json j{{"schema", "spectraljacobi/1"}, {"N", b.N}, {"degree", M}};
                j["nodes"] = mm.nodes;
                j["orthonormality_defect"] = sj::trisolve::block_orthonormality_defect(mm, b, M);
                const auto [d1, d2] =
                    sj::mvop::liouville_ostrogradsky_defect(b, std::min(M, 5), {1.0, 1.0});
                j["liouville_defects"] = {d1, d2};
                emit(cfg, j.dump(2) + "\n");
            }
        } else if (geg->parsed()) {
            const sj::mvop::GegenbauerFamily fam = sj::mvop::gegenbauer(geg_ell, geg_nu);
            std::ostringstream os;
            os << "n,k,H_nk\n";
            for (int n = 0; n <= geg_nmax; ++n) {
                const Eigen::MatrixXd H = fam.H(n);
                for (int k = 0; k < fam.size(); ++k)
                    os << n << "," << k << "," << format_double(H(k, k)) << "\n";
            }
            emit(cfg, os.str());
        } else if (morse->parsed()) {
            const auto m = sj::jmatrix::morse_model(morse_b);
            const auto formula = sj::jmatrix::morse_bound_states(m);
            const auto eig = sj::jmatrix::morse_block_eigenvalues(m);
            std::ostringstream os;
            os << "m,eigenvalue_formula,eigensolve,abs_diff\n";
            for (int i = 0; i < m.N; ++i)
                os << (m.N - 1 - i) << "," << format_double(formula[i]) << ","
                   << format_double(eig[i]) << "," << format_double(std::abs(formula[i] - eig[i]))
                   << "\n";
            emit(cfg, os.str());
        } else if (jt->parsed()) {
            const auto model = sj::jmatrix::jacobi_t_model(jt_alpha, jt_beta, {jt_delta, 0.0});
            std::ostringstream os;
            os << "n,m,projection\n";
            for (int n = 0; n <= jt_nmax; ++n)
                for (int m = 0; m <= jt_nmax; ++m)
                    os << n << "," << m << ","
                       << format_double(sj::jmatrix::jacobi_T_project(model, n, m)) << "\n";
            emit(cfg, os.str());
        } else if (ft->parsed()) {
            const auto f = sj::jmatrix::five_term_model(ft_alpha, ft_beta, ft_kappa2);
            std::ostringstream os;
            os << "n,a_n,b_n,c_n,alpha_n,beta_n,gamma_n\n";
            for (int n = 0; n <= ft_nmax; ++n) {
                const auto c = sj::jmatrix::fiveterm_coeffs(f, n);
                const auto conn = sj::jmatrix::connection_coeffs(f, n);
                os << n << "," << format_double(c.a) << "," << format_double(c.b) << ","
                   << format_double(c.c) << "," << format_double(conn.alpha_n) << ","
                   << format_double(conn.beta_n) << "," << format_double(conn.gamma_n) << "\n";
            }
            emit(cfg, os.str());
        } else if (fold->parsed()) {
            const auto f = sj::jmatrix::five_term_model(fd_alpha, fd_beta, fd_kappa2);
            const sj::BlockRecurrence blk = sj::jmatrix::fold_to_block(f);
            json j{{"schema", "spectraljacobi/1"},
                   {"alpha", fd_alpha},
                   {"beta", fd_beta},
                   {"kappa2", fd_kappa2}};
            j["blocks"] = json::array();
            for (int n = 0; n <= fd_nmax; ++n) {
                const Eigen::MatrixXcd A = blk.A(n), B = blk.B(n);
                j["blocks"].push_back(
                    {{"n", n},
                     {"A", {{A(0, 0).real(), A(0, 1).real()}, {A(1, 0).real(), A(1, 1).real()}}},
                     {"B", {{B(0, 0).real(), B(0, 1).real()}, {B(1, 0).real(), B(1, 1).real()}}}});
            }
            const auto [d1, d2] = sj::mvop::liouville_ostrogradsky_defect(blk, 5, {1.0, 1.0});
            j["liouville_defects"] = {d1, d2};
            emit(cfg, j.dump(2) + "\n");
        } else if (ver->parsed()) {
            if (!sj::verify::has_suite(suite)) {
                std::cerr << "unknown suite '" << suite << "'; available:";
                for (const auto& s : sj::verify::suite_names()) std::cerr << " " << s;
                std::cerr << "\n";
                return kExitDomain;
            }
            std::vector<sj::verify::Check> checks;
            if (suite == "morse" && ver_b > 0.0)
                checks = sj::verify::suite_morse(cfg, ver_b);
            else
                checks = sj::verify::run_suite(suite, cfg);
            std::sort(checks.begin(), checks.end(),
                      [](const auto& a, const auto& b) { return a.name < b.name; });
            emit(cfg, checks_report(checks, cfg.format, suite));
            for (const auto& c : checks)
                if (!c.pass) return 1;
        }
        return 0;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return kExitAccuracy;
    }
}
