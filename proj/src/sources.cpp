#include "fmd/sources.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fmd {

std::string to_string(SourceKind kind)
{
    switch (kind) {
    case SourceKind::none: return "none";
    case SourceKind::wait_first: return "wait_first";
    case SourceKind::jump_first: return "jump_first";
    case SourceKind::standard_walk: return "standard_walk";
    case SourceKind::monomial: return "monomial";
    case SourceKind::sampled: return "sampled";
    }
    return "unknown";
}

SourceKind source_kind_from_string(const std::string& name)
{
    for (auto k : {SourceKind::none, SourceKind::wait_first, SourceKind::jump_first, SourceKind::standard_walk,
                   SourceKind::monomial, SourceKind::sampled})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown source kind '" + name + "'");
}

void SampledSource::set(int n, long i, double value)
{
    if (value == 0.0)
        values_.erase({n, i});
    else
        values_[{n, i}] = value;
}

double SampledSource::get(int n, long i) const
{
    auto it = values_.find({n, i});
    return it == values_.end() ? 0.0 : it->second;
}

SampledSource SampledSource::read_csv(std::istream& in, const GridSpec& grid)
{
    SampledSource out;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string fn, fi, fv, extra;
        if (!std::getline(ls, fn, ',') || !std::getline(ls, fi, ',') || !std::getline(ls, fv, ',')) {
            throw std::runtime_error("sampled source line " + std::to_string(line_no) +
                                     ": expected three columns n,i,value");
        }
        if (std::getline(ls, extra, ','))
            throw std::runtime_error("sampled source line " + std::to_string(line_no) + ": too many columns");
        long n = 0, i = 0;
        double v = 0.0;
        try {
            std::size_t pn = 0, pi = 0, pv = 0;
            n = std::stol(fn, &pn);
            i = std::stol(fi, &pi);
            v = std::stod(fv, &pv);
            if (pn != fn.size() || pi != fi.size() || pv != fv.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            if (!header_seen && out.size() == 0) {
                header_seen = true;
                continue;
            }
            throw std::runtime_error("sampled source line " + std::to_string(line_no) + ": not numeric");
        }
        if (n < 0 || n > grid.n_time() + 1)
            throw std::runtime_error("sampled source line " + std::to_string(line_no) + ": time level " +
                                     std::to_string(n) + " outside 0.." + std::to_string(grid.n_time() + 1));
        if (!grid.contains_global(i))
            throw std::runtime_error("sampled source line " + std::to_string(line_no) + ": cell " +
                                     std::to_string(i) + " outside the mesh");
        if (!std::isfinite(v))
            throw std::runtime_error("sampled source line " + std::to_string(line_no) + ": value not finite");
        out.set(static_cast<int>(n), i, v);
    }
    return out;
}

SampledSource SampledSource::read_csv_file(const std::string& path, const GridSpec& grid)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sampled source file '" + path + "'");
    return read_csv(in, grid);
}

SourceTerm SourceTerm::none(const SolverParams& params) { return {SourceKind::none, params}; }
SourceTerm SourceTerm::wait_first(const SolverParams& params) { return {SourceKind::wait_first, params}; }
SourceTerm SourceTerm::jump_first(const SolverParams& params) { return {SourceKind::jump_first, params}; }
SourceTerm SourceTerm::standard_walk(const SolverParams& params) { return {SourceKind::standard_walk, params}; }

SourceTerm SourceTerm::monomial(const SolverParams& params, double mu)
{
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("monomial source needs mu >= 0");
    SourceTerm s{SourceKind::monomial, params};
    s.mu_ = mu;
    return s;
}

SourceTerm SourceTerm::sampled(const SolverParams& params, SampledSource values)
{
    SourceTerm s{SourceKind::sampled, params};
    s.samples_ = std::make_shared<const SampledSource>(std::move(values));
    return s;
}

bool SourceTerm::singular_at_zero() const
{
    return kind_ == SourceKind::wait_first || kind_ == SourceKind::jump_first || kind_ == SourceKind::standard_walk;
}

namespace {

// Adds amplitude * delta(x - center) to out; cells off the mesh are dropped.
void add_delta(std::vector<double>& out, double amplitude, double center, const DeltaSpec& spec,
               const GridSpec& grid)
{
    if (spec.K < 1) throw std::invalid_argument("delta half-width K must be >= 1");
    const double h = grid.h();
    const double width = spec.K * h;
    const auto lo = static_cast<long>(std::floor((center - width) / h)) - 1;
    const auto hi = static_cast<long>(std::ceil((center + width) / h)) + 1;
    std::vector<double> stencil;
    stencil.reserve(static_cast<std::size_t>(hi - lo + 1));
    double sum = 0.0;
    for (long i = lo; i <= hi; ++i) {
        const double r = grid.x_global(i) - center;
        double v = 0.0;
        if (std::abs(r) <= width) v = (1.0 + std::cos(std::numbers::pi * r / width)) / (2.0 * width);
        stencil.push_back(v);
        sum += v;
    }
    const double norm = spec.rescale ? 1.0 / (h * sum) : 1.0;
    for (long i = lo; i <= hi; ++i) {
        if (!grid.contains_global(i)) continue;
        out[grid.local(i)] += amplitude * norm * stencil[static_cast<std::size_t>(i - lo)];
    }
}

// lo^-a - hi^-a for 0 < lo <= hi, without cancellation when hi ~ lo
double power_difference(double a, double lo, double hi)
{
    if (std::isinf(hi)) return std::pow(lo, -a);
    return -std::pow(lo, -a) * std::expm1(-a * std::log1p((hi - lo) / lo));
}

}  // namespace

std::vector<double> discretize_delta(double center, const DeltaSpec& spec, const GridSpec& grid)
{
    if (!(center >= grid.x_min() && center <= grid.x_max())) {
        std::ostringstream os;
        os << "delta centre " << center << " outside the domain [" << grid.x_min() << ", " << grid.x_max() << "]";
        throw std::invalid_argument(os.str());
    }
    std::vector<double> out(grid.n_space(), 0.0);
    add_delta(out, 1.0, center, spec, grid);
    return out;
}

double jump_first_cell_average(const SolverParams& params, double a, double b, double t)
{
    if (!(b > a)) throw std::invalid_argument("jump_first_cell_average: empty cell");
    if (!(t > 0.0)) throw std::invalid_argument("jump_first_cell_average: t must be positive");
    const double al = params.alpha();
    double integral = 0.0;
    if (b > t) integral += params.q() * power_difference(al, std::max(a, t), b);
    if (-a > t) integral += params.p() * power_difference(al, std::max(-b, t), -a);
    return integral / (params.gamma_1ma() * (b - a));
}

std::vector<double> source_values(const SourceTerm& term, int n, const GridSpec& grid, const DeltaSpec& delta)
{
    if (n < 0) throw std::invalid_argument("source_values: negative time level");
    if (n == 0 && term.singular_at_zero())
        throw std::invalid_argument("source_values: " + to_string(term.kind()) + " source is singular at t = 0");
    const SolverParams& params = term.params();
    const double t = grid.t(n);
    const double h = grid.h();
    const std::size_t ns = grid.n_space();
    std::vector<double> out(ns, 0.0);
    switch (term.kind()) {
    case SourceKind::none: break;
    case SourceKind::wait_first: {
        const double amp = std::pow(t, -params.alpha()) / params.gamma_1ma();
        add_delta(out, amp, 0.0, delta, grid);
        break;
    }
    case SourceKind::standard_walk: {
        const double amp = std::pow(t, -params.alpha()) / params.gamma_1ma();
        add_delta(out, amp * params.p(), -t, delta, grid);
        add_delta(out, amp * params.q(), t, delta, grid);
        break;
    }
    case SourceKind::jump_first:
        for (std::size_t k = 0; k < ns; ++k) {
            const double x = grid.x_local(k);
            out[k] = jump_first_cell_average(params, x - 0.5 * h, x + 0.5 * h, t);
        }
        break;
    case SourceKind::monomial: {
        const double v = std::pow(t, term.mu());
        for (auto& f : out) f = v;
        break;
    }
    case SourceKind::sampled:
        for (std::size_t k = 0; k < ns; ++k) out[k] = term.samples().get(n, grid.i_min() + static_cast<long>(k));
        break;
    }
    return out;
}

double validate_source_mass(const SourceTerm& term, int n, const GridSpec& grid, const DeltaSpec& delta)
{
    if (n < 1) throw std::invalid_argument("validate_source_mass: n must be >= 1");
    const auto f = source_values(term, n, grid, delta);
    double sum = 0.0;
    for (double v : f) sum += v;
    const SolverParams& params = term.params();
    return grid.h() * sum - std::pow(grid.t(n), -params.alpha()) / params.gamma_1ma();
}

}  // namespace fmd
