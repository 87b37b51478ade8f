#include "fmd/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fmd {

namespace {

constexpr long block_cells = 1024;

std::vector<double> source_row(const SolveConfig& cfg, int n)
{
    const int level = cfg.variant == SchemeVariant::advanced_source ? n + 1 : n;
    return source_values(cfg.source, level, cfg.grid, cfg.delta);
}

double source_term(const std::vector<double>& f, long k, double c, double p, double q)
{
    const auto ns = static_cast<long>(f.size());
    const double left = k - 1 >= 0 ? f[static_cast<std::size_t>(k - 1)] : 0.0;
    const double right = k + 1 < ns ? f[static_cast<std::size_t>(k + 1)] : 0.0;
    return c * (p * left + q * right);
}

void check_finite(const std::vector<double>& row, int n, const GridSpec& grid)
{
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (!std::isfinite(row[k])) {
            const long i = grid.i_min() + static_cast<long>(k);
            std::ostringstream os;
            os << "non-finite value " << row[k] << " at time level n = " << n << ", cell i = " << i
               << " (x = " << grid.x_global(i) << ")";
            throw NumericalFailure(n, i, os.str());
        }
    }
}

std::string fmt17(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Accumulates sum_j d_{n-j} (p u_{k+s}^j + q u_{k-s}^j), s = n - j, into
// acc[k0..k1); every cell sees the same operation sequence as the naive loop.
void accumulate_block(const SolutionHistory& history, int n, const CoefficientTable& coeffs, double p, double q,
                      long k0, long k1, double* acc)
{
    const auto ns = static_cast<long>(history.n_space());
    for (long k = k0; k < k1; ++k) acc[k - k0] = 0.0;
    for (int j = 0; j < n; ++j) {
        const long s = n - j;
        const double w = coeffs.d(n - j);
        const double* u = history.row_ptr(j);
        // reads of u_{k+s} are valid for k < ns - s, reads of u_{k-s} for k >= s
        long cuts[4] = {k0, std::clamp(std::min(s, ns - s), k0, k1), std::clamp(std::max(s, ns - s), k0, k1), k1};
        for (int seg = 0; seg < 3; ++seg) {
            const long a = cuts[seg];
            const long b = cuts[seg + 1];
            if (a >= b) continue;
            const bool has_right = a < ns - s;
            const bool has_left = a >= s;
            double* out = acc - k0;
            if (has_right && has_left) {
                for (long k = a; k < b; ++k) out[k] += w * (p * u[k + s] + q * u[k - s]);
            } else if (has_right) {
                for (long k = a; k < b; ++k) out[k] += w * (p * u[k + s] + q * 0.0);
            } else if (has_left) {
                for (long k = a; k < b; ++k) out[k] += w * (p * 0.0 + q * u[k - s]);
            } else {
                for (long k = a; k < b; ++k) out[k] += w * (p * 0.0 + q * 0.0);
            }
        }
    }
}

SolutionHistory run(const SolveConfig& cfg, bool reference)
{
    validate(cfg);
    SolutionHistory history(cfg.grid, cfg.initial);
    check_finite(cfg.initial, 0, cfg.grid);
    const CoefficientTable coeffs(cfg.params, cfg.grid.n_time());
    for (int n = 1; n <= cfg.grid.n_time(); ++n) {
        auto row = reference ? step_reference(history, n, cfg, coeffs) : step(history, n, cfg, coeffs);
        check_finite(row, n, cfg.grid);
        history.set_row(n, row);
    }
    return history;
}

}  // namespace

std::string to_string(SchemeVariant v)
{
    return v == SchemeVariant::standard ? "standard" : "advanced_source";
}

SchemeVariant scheme_variant_from_string(const std::string& name)
{
    if (name == "standard") return SchemeVariant::standard;
    if (name == "advanced_source") return SchemeVariant::advanced_source;
    throw std::invalid_argument("unknown scheme variant '" + name + "' (expected standard or advanced_source)");
}

void validate(const SolveConfig& cfg)
{
    const GridSpec& g = cfg.grid;
    if (cfg.initial.size() != g.n_space()) {
        std::ostringstream os;
        os << "initial row has " << cfg.initial.size() << " values, mesh has " << g.n_space() << " cells";
        throw std::invalid_argument(os.str());
    }
    if (cfg.store_every < 1) throw std::invalid_argument("store_every must be >= 1");
    if (cfg.delta.K < 1) throw std::invalid_argument("delta.K must be >= 1");
    if (!(cfg.source.params() == cfg.params)) throw std::invalid_argument("source built for different parameters");
    const double reach = (cfg.delta.K + 1) * g.h();
    const int last = cfg.variant == SchemeVariant::advanced_source ? g.n_time() + 1 : g.n_time();
    double extent = -1.0;
    if (cfg.source.kind() == SourceKind::wait_first) extent = reach;
    if (cfg.source.kind() == SourceKind::standard_walk) extent = g.t(last) + reach;
    if (extent > 0.0 && (g.x_min() > -extent + 1e-12 * g.h() || g.x_max() < extent - 1e-12 * g.h())) {
        std::ostringstream os;
        os << to_string(cfg.source.kind()) << " source would be clipped by the mesh edge: the domain must cover ["
           << -extent << ", " << extent << "]";
        throw std::invalid_argument(os.str());
    }
    if (cfg.track_mass && cfg.variant == SchemeVariant::advanced_source) {
        double sum = 0.0;
        for (double v : cfg.initial) sum += v;
        if (std::abs(g.h() * sum - 1.0) > 1e-9) {
            std::ostringstream os;
            os << "mass tracking needs a unit-mass initial row, got h * sum = " << fmt17(g.h() * sum);
            throw std::invalid_argument(os.str());
        }
    }
}

std::vector<double> delta_initial(const GridSpec& grid, const DeltaSpec& delta)
{
    return discretize_delta(0.0, delta, grid);
}

std::vector<double> step(const SolutionHistory& history, int n, const SolveConfig& cfg,
                         const CoefficientTable& coeffs)
{
    if (n < 1 || n >= history.rows_filled() + 1) throw std::out_of_range("step: rows 0..n-1 must be populated");
    const auto f = source_row(cfg, n);
    const double p = cfg.params.p();
    const double q = cfg.params.q();
    const double c = std::pow(cfg.grid.h(), cfg.params.alpha()) * cfg.params.gamma_2ma();
    const auto ns = static_cast<long>(history.n_space());
    std::vector<double> row(static_cast<std::size_t>(ns));
    const long nblocks = (ns + block_cells - 1) / block_cells;
#pragma omp parallel for schedule(static)
    for (long blk = 0; blk < nblocks; ++blk) {
        const long k0 = blk * block_cells;
        const long k1 = std::min(ns, k0 + block_cells);
        double* acc = row.data() + k0;
        accumulate_block(history, n, coeffs, p, q, k0, k1, acc);
        for (long k = k0; k < k1; ++k) acc[k - k0] = acc[k - k0] + source_term(f, k, c, p, q);
    }
    return row;
}

std::vector<double> step_reference(const SolutionHistory& history, int n, const SolveConfig& cfg,
                                   const CoefficientTable& coeffs)
{
    if (n < 1 || n >= history.rows_filled() + 1) throw std::out_of_range("step: rows 0..n-1 must be populated");
    const auto f = source_row(cfg, n);
    const double p = cfg.params.p();
    const double q = cfg.params.q();
    const double c = std::pow(cfg.grid.h(), cfg.params.alpha()) * cfg.params.gamma_2ma();
    const GridSpec& g = cfg.grid;
    std::vector<double> row(history.n_space());
    for (std::size_t k = 0; k < row.size(); ++k) {
        const long i = g.i_min() + static_cast<long>(k);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const long s = n - j;
            acc += coeffs.d(n - j) * (p * history.at(j, i + s) + q * history.at(j, i - s));
        }
        row[k] = acc + source_term(f, static_cast<long>(k), c, p, q);
    }
    return row;
}

SolutionHistory solve(const SolveConfig& cfg, const SolveOptions& opt)
{
    const double bound = stability_mesh_bound(cfg.params);
    if (opt.warnings && cfg.grid.h() > bound) {
        *opt.warnings << "warning: h = " << cfg.grid.h()
                      << " exceeds the stability bound h <= (1-alpha)^{1/(2 alpha)} = " << bound << "\n";
    }
    return run(cfg, false);
}

SolutionHistory solve_reference(const SolveConfig& cfg) { return run(cfg, true); }

std::vector<double> mass_series(const SolutionHistory& history)
{
    std::vector<double> m;
    m.reserve(static_cast<std::size_t>(history.rows_filled()));
    const double h = history.grid().h();
    for (int n = 0; n < history.rows_filled(); ++n) {
        double s = 0.0;
        for (double v : history.row(n)) s += v;
        m.push_back(h * s);
    }
    return m;
}

std::vector<int> rows_for_times(const GridSpec& grid, const std::vector<double>& times)
{
    std::vector<int> rows;
    for (double t : times) {
        const double r = t / grid.h();
        const double n = std::round(r);
        if (!(t >= 0.0) || std::abs(r - n) > 1e-9 * std::max(1.0, r) || n > grid.n_time()) {
            std::ostringstream os;
            os << "time " << t << " is not a mesh time in [0, " << grid.T() << "] with step h = " << grid.h();
            throw std::invalid_argument(os.str());
        }
        rows.push_back(static_cast<int>(n));
    }
    return rows;
}

std::vector<int> thinned_rows(const GridSpec& grid, int store_every)
{
    if (store_every < 1) throw std::invalid_argument("store_every must be >= 1");
    std::vector<int> rows;
    for (int n = 0; n <= grid.n_time(); n += store_every) rows.push_back(n);
    if (rows.back() != grid.n_time()) rows.push_back(grid.n_time());
    return rows;
}

void write_snapshot_csv(std::ostream& out, const SolutionHistory& history, const SolveConfig& cfg,
                        const std::vector<int>& rows)
{
    const GridSpec& g = history.grid();
    out << "#alpha=" << fmt17(cfg.params.alpha()) << "\n";
    out << "#p=" << fmt17(cfg.params.p()) << "\n";
    out << "#h=" << fmt17(g.h()) << "\n";
    out << "#T=" << fmt17(g.T()) << "\n";
    out << "#variant=" << to_string(cfg.variant) << "\n";
    out << "#source=" << to_string(cfg.source.kind()) << "\n";
    out << "x";
    for (int n : rows) out << ",t=" << fmt17(g.t(n));
    out << "\n";
    std::vector<std::span<const double>> cols;
    for (int n : rows) cols.push_back(history.row(n));
    for (std::size_t k = 0; k < g.n_space(); ++k) {
        out << fmt17(g.x_local(k));
        for (const auto& c : cols) out << ',' << fmt17(c[k]);
        out << "\n";
    }
}

void write_sparse_csv(std::ostream& out, const SolutionHistory& history, const std::vector<int>& rows)
{
    const GridSpec& g = history.grid();
    out << "n,i,value\n";
    for (int n : rows) {
        const auto r = history.row(n);
        for (std::size_t k = 0; k < r.size(); ++k)
            if (r[k] != 0.0) out << n << ',' << g.i_min() + static_cast<long>(k) << ',' << fmt17(r[k]) << "\n";
    }
}

}  // namespace fmd
