#include "fmd/diagnostics.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fmd {

std::string to_string(NormKind kind)
{
    switch (kind) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
    }
    return "unknown";
}

NormKind norm_kind_from_string(const std::string& name)
{
    for (auto k : {NormKind::l1, NormKind::l2, NormKind::linf})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown norm '" + name + "' (expected l1, l2 or linf)");
}

double discrete_norm(std::span<const double> row, double h, NormKind kind)
{
    switch (kind) {
    case NormKind::l1: {
        double s = 0.0;
        for (double v : row) s += std::abs(v);
        return h * s;
    }
    case NormKind::l2: {
        // scaled sum of squares, robust against overflow for large entries
        double scale = 0.0;
        for (double v : row) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) return 0.0;
        double s = 0.0;
        for (double v : row) {
            const double r = v / scale;
            s += r * r;
        }
        return scale * std::sqrt(h * s);
    }
    case NormKind::linf: {
        double m = 0.0;
        for (double v : row) m = std::max(m, std::abs(v));
        return m;
    }
    }
    return 0.0;
}

Restriction Restriction::central_third(const GridSpec& grid)
{
    const double w = (grid.x_max() - grid.x_min()) / 3.0;
    return {grid.x_min() + w, grid.x_max() - w};
}

namespace {

int row_of(const SolutionHistory& history, double t)
{
    const GridSpec& g = history.grid();
    const double r = t / g.h();
    const double n = std::round(r);
    if (!(t >= 0.0) || std::abs(r - n) > 1e-9 * std::max(1.0, r) || n >= history.rows_filled()) {
        std::ostringstream os;
        os << "time " << t << " is not a stored mesh time";
        throw std::invalid_argument(os.str());
    }
    return static_cast<int>(n);
}

void check_restriction(const GridSpec& g, const Restriction& r)
{
    const double slack = 1e-9 * g.h();
    if (!(r.x_lo <= r.x_hi) || r.x_lo < g.x_min() - slack || r.x_hi > g.x_max() + slack)
        throw std::invalid_argument("error restriction must lie inside the mesh");
}

template <class Oracle>
ErrorReport measure(const SolutionHistory& history, Oracle&& oracle, double t, NormKind kind,
                    const Restriction& restriction)
{
    const GridSpec& g = history.grid();
    check_restriction(g, restriction);
    const int n = row_of(history, t);
    const auto row = history.row(n);
    std::vector<double> diff;
    const double slack = 1e-9 * g.h();
    for (std::size_t k = 0; k < row.size(); ++k) {
        const double x = g.x_local(k);
        if (x < restriction.x_lo - slack || x > restriction.x_hi + slack) continue;
        diff.push_back(row[k] - oracle(k, g.i_min() + static_cast<long>(k)));
    }
    return {g.h(), kind, discrete_norm(diff, g.h(), kind), g.t(n), restriction};
}

}  // namespace

ErrorReport error_against_oracle(const SolutionHistory& history, const CellOracle& oracle, double t,
                                 NormKind kind, const Restriction& restriction)
{
    const double tn = history.grid().t(row_of(history, t));
    return measure(history, [&](std::size_t, long i) { return oracle(i, tn); }, t, kind, restriction);
}

ErrorReport error_against_row(const SolutionHistory& history, std::span<const double> oracle_row, double t,
                              NormKind kind, const Restriction& restriction)
{
    if (oracle_row.size() != history.n_space()) throw std::invalid_argument("oracle row has wrong length");
    return measure(history, [&](std::size_t k, long) { return oracle_row[k]; }, t, kind, restriction);
}

OrderFit estimate_order(const std::vector<std::pair<double, double>>& pairs)
{
    for (std::size_t k = 1; k < pairs.size(); ++k)
        if (!(pairs[k].first < pairs[k - 1].first))
            throw std::invalid_argument("estimate_order: h must be strictly decreasing");
    std::vector<double> lx, ly;
    std::ostringstream note;
    for (const auto& [h, e] : pairs) {
        if (!(h > 0.0)) throw std::invalid_argument("estimate_order: h must be positive");
        if (!(e > 0.0)) {
            note << "excluded h = " << h << " (error " << e << "); ";
            continue;
        }
        lx.push_back(std::log(h));
        ly.push_back(std::log(e));
    }
    if (lx.size() < 3) throw std::invalid_argument("estimate_order: fewer than three positive errors");
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
        syy += (ly[k] - my) * (ly[k] - my);
    }
    const double slope = sxy / sxx;
    const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    std::string nt = note.str();
    if (!nt.empty()) nt.resize(nt.size() - 2);
    return {slope, my - slope * mx, r2, lx.size(), nt};
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows)
{
    out << "alpha,h,norm_kind,error,slope\n";
    out << std::setprecision(17);
    for (const auto& r : rows)
        out << r.alpha << ',' << r.h << ',' << to_string(r.norm_kind) << ',' << r.error << ',' << r.slope << "\n";
}

}  // namespace fmd
