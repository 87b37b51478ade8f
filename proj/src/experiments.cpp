#include "fmd/experiments.hpp"

#include "fmd/analytic.hpp"
#include "fmd/kernel_oracle.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fmd {

namespace {

std::ofstream open_output(const std::string& key, const std::string& path)
{
    if (path.empty()) throw ConfigError(key, "output path is empty");
    std::ofstream f(path);
    if (!f) throw ConfigError(key, "cannot write '" + path + "'");
    return f;
}

WalkKind walk_of(SourceKind kind)
{
    switch (kind) {
    case SourceKind::wait_first: return WalkKind::wait_first;
    case SourceKind::jump_first: return WalkKind::jump_first;
    case SourceKind::standard_walk: return WalkKind::standard_walk;
    default: break;
    }
    throw ConfigError("source.kind", to_string(kind) + " has no analytic density; use wait_first, jump_first or "
                                                        "standard_walk");
}

int guarded(std::ostream& err, const std::function<void()>& body)
{
    try {
        body();
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const QuadratureError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const KernelConvergenceError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}

std::vector<int> stored_rows(const RunConfig& cfg, const GridSpec& grid)
{
    if (cfg.times.empty()) return thinned_rows(grid, cfg.store_every);
    try {
        return rows_for_times(grid, cfg.times);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("times", e.what());
    }
}

SolutionHistory solve_logged(const SolveConfig& sc, std::ostream& err)
{
    SolveOptions opt;
    opt.warnings = &err;
    return solve(sc, opt);
}

}  // namespace

Restriction default_restriction(SourceKind kind, const GridSpec& grid)
{
    if (kind == SourceKind::monomial) return Restriction::central_third(grid);
    if (kind == SourceKind::jump_first) {
        const Restriction r{grid.x_min() + grid.T(), grid.x_max() - grid.T()};
        if (r.x_lo < r.x_hi) return r;
    }
    return Restriction::full(grid);
}

std::vector<double> reference_row(SourceKind kind, const SolverParams& params, double mu, double t,
                                  const GridSpec& grid)
{
    if (kind == SourceKind::monomial)
        return std::vector<double>(grid.n_space(), monomial_solution(mu, params.alpha(), t));
    const auto profile = SimilarityProfile::for_equation(walk_of(kind), params);
    return profile_cell_averages(profile, t, grid);
}

std::vector<SweepResult> convergence_sweep(const RunConfig& cfg)
{
    if (cfg.sweep_h.size() < 3) throw ConfigError("sweep.h", "needs at least three step sizes");
    for (std::size_t k = 1; k < cfg.sweep_h.size(); ++k)
        if (!(cfg.sweep_h[k] < cfg.sweep_h[k - 1])) throw ConfigError("sweep.h", "must be strictly decreasing");
    if (cfg.norms.empty()) throw ConfigError("norms", "at least one norm is required");
    const std::vector<double> alphas = cfg.sweep_alpha.empty() ? std::vector<double>{cfg.alpha} : cfg.sweep_alpha;
    if (cfg.source_kind != SourceKind::monomial) walk_of(cfg.source_kind);
    std::vector<SweepResult> out;
    for (double a : alphas) {
        std::vector<SweepResult> per_norm;
        for (NormKind nk : cfg.norms) per_norm.push_back({a, nk, {}, {}});
        for (double h : cfg.sweep_h) {
            const SolveConfig sc = make_solve_config(cfg, a, h);
            const SolutionHistory hist = solve(sc);
            const auto ref = reference_row(cfg.source_kind, sc.params, cfg.mu, cfg.T, sc.grid);
            const auto restriction = default_restriction(cfg.source_kind, sc.grid);
            for (auto& r : per_norm)
                r.errors.emplace_back(h, error_against_row(hist, ref, cfg.T, r.norm, restriction).value);
        }
        for (auto& r : per_norm) {
            r.fit = estimate_order(r.errors);
            out.push_back(std::move(r));
        }
    }
    return out;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const SolveConfig sc = make_solve_config(cfg);
        const auto rows = stored_rows(cfg, sc.grid);
        auto file = open_output("output", cfg.output);
        const SolutionHistory hist = solve_logged(sc, err);
        write_snapshot_csv(file, hist, sc, rows);
        if (!cfg.output_sparse.empty()) {
            auto sparse = open_output("output.sparse", cfg.output_sparse);
            write_sparse_csv(sparse, hist, rows);
        }
        const auto m = mass_series(hist);
        out << "solved " << sc.grid.n_time() << " steps on " << sc.grid.n_space() << " cells; mass at T = "
            << std::setprecision(10) << m.back() << "\n";
        out << "wrote " << cfg.output << "\n";
    });
}

int cmd_pdf_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        walk_of(cfg.source_kind);
        const SolveConfig sc = make_solve_config(cfg);
        auto file = open_output("output", cfg.output);
        const SolutionHistory hist = solve_logged(sc, err);
        const auto ref = reference_row(cfg.source_kind, sc.params, cfg.mu, cfg.T, sc.grid);
        const auto num = hist.row(sc.grid.n_time());
        file << "#alpha=" << std::setprecision(17) << sc.params.alpha() << "\n#p=" << sc.params.p()
             << "\n#h=" << sc.grid.h() << "\n#T=" << sc.grid.T() << "\n#variant=" << to_string(sc.variant)
             << "\n#source=" << to_string(cfg.source_kind) << "\n";
        file << "x,numeric,analytic\n";
        for (std::size_t k = 0; k < num.size(); ++k)
            file << sc.grid.x_local(k) << ',' << num[k] << ',' << ref[k] << "\n";
        const auto restriction = default_restriction(cfg.source_kind, sc.grid);
        for (NormKind nk : cfg.norms) {
            const auto r = error_against_row(hist, ref, cfg.T, nk, restriction);
            out << to_string(nk) << " error = " << std::setprecision(10) << r.value << "\n";
        }
        out << "wrote " << cfg.output << "\n";
    });
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        auto file = open_output("output", cfg.output);
        const auto results = convergence_sweep(cfg);
        std::vector<ConvergenceRow> rows;
        for (const auto& r : results) {
            for (const auto& [h, e] : r.errors) rows.push_back({r.alpha, h, r.norm, e, r.fit.slope});
            out << "alpha = " << r.alpha << "  norm = " << to_string(r.norm) << "  slope = " << std::setprecision(6)
                << r.fit.slope << "  r^2 = " << r.fit.r_squared << "\n";
            if (!r.fit.note.empty()) out << "  note: " << r.fit.note << "\n";
        }
        write_convergence_csv(file, rows);
        out << "wrote " << cfg.output << "\n";
    });
}

int cmd_mass(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        RunConfig std_cfg = cfg;
        std_cfg.variant = SchemeVariant::standard;
        RunConfig adv_cfg = cfg;
        adv_cfg.variant = SchemeVariant::advanced_source;
        const SolveConfig s1 = make_solve_config(std_cfg);
        const SolveConfig s2 = make_solve_config(adv_cfg);
        auto file = open_output("output", cfg.output);
        const auto m1 = mass_series(solve_logged(s1, err));
        const auto m2 = mass_series(solve(s2));
        file << "t,m_standard,m_advanced\n" << std::setprecision(17);
        for (std::size_t n = 0; n < m1.size(); ++n) file << s1.grid.t(static_cast<int>(n)) << ',' << m1[n] << ',' << m2[n] << "\n";
        double rho = 0.0;
        if (s2.source.kind() != SourceKind::none && s2.source.kind() != SourceKind::monomial)
            for (int n = 1; n <= s2.grid.n_time() + 1; ++n)
                rho = std::max(rho, std::abs(validate_source_mass(s2.source, n, s2.grid, s2.delta)));
        out << std::setprecision(10) << "mass at T: standard = " << m1.back() << ", advanced_source = " << m2.back()
            << "\nmax |rho| = " << rho << "\n";
        out << "wrote " << cfg.output << "\n";
    });
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha", "must satisfy 0 < alpha < 1");
        if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw ConfigError("p", "must satisfy 0 <= p <= 1");
        if (!(cfg.kernel_t > 0.0)) throw ConfigError("kernel.t", "must be positive");
        if (!(cfg.kernel_x_max > 0.0)) throw ConfigError("kernel.x_max", "must be positive");
        if (cfg.kernel_nx < 2) throw ConfigError("kernel.nx", "must be >= 2");
        if (!(cfg.kernel_window > 0.0)) throw ConfigError("kernel.window", "must be positive");
        auto file = open_output("output", cfg.output);
        FourierSpec spec;
        spec.window = cfg.kernel_window;
        const KernelModel model(cfg.alpha, cfg.p, cfg.kernel_t, cfg.kernel_x_max, spec);
        file << "#alpha=" << std::setprecision(17) << cfg.alpha << "\n#p=" << cfg.p << "\n#t=" << cfg.kernel_t
             << "\nx,G\n";
        for (int k = 0; k < cfg.kernel_nx; ++k) {
            const double x = -cfg.kernel_x_max + 2.0 * cfg.kernel_x_max * k / (cfg.kernel_nx - 1);
            file << x << ',' << model.G(x) << "\n";
        }
        const double m = model.mass();
        const double expected = std::pow(cfg.kernel_t, cfg.alpha - 1.0) / gamma_fn(cfg.alpha);
        out << std::setprecision(12) << "kernel mass = " << m << ", expected t^(alpha-1)/Gamma(alpha) = " << expected
            << ", relative residual = " << std::setprecision(3) << (m - expected) / expected << "\n";
        out << "wrote " << cfg.output << "\n";
    });
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (name == "solve") return cmd_solve(cfg, out, err);
    if (name == "pdf-compare") return cmd_pdf_compare(cfg, out, err);
    if (name == "convergence") return cmd_convergence(cfg, out, err);
    if (name == "mass") return cmd_mass(cfg, out, err);
    if (name == "kernel") return cmd_kernel(cfg, out, err);
    err << "unknown command '" << name << "'\n";
    return exit_config;
}

}  // namespace fmd
