#include "fmd/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fmd {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7,
};

double lanczos(double x)
{
    const double z = x - 1.0;
    double a = lanczos_c[0];
    for (std::size_t k = 1; k < lanczos_c.size(); ++k) a += lanczos_c[k] / (z + static_cast<double>(k));
    const double tt = z + lanczos_g + 0.5;
    // split the power so tt^(z+1/2) does not overflow before exp(-tt) brings it back
    const double half = std::pow(tt, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-tt)) * a;
}

long checked_index(double x, double h, const char* what)
{
    const double r = x / h;
    const double n = std::round(r);
    if (std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(r))) {
        std::ostringstream os;
        os << what << " = " << x << " is not an integer multiple of h = " << h;
        throw std::invalid_argument(os.str());
    }
    return static_cast<long>(n);
}

}  // namespace

double gamma_fn(double x)
{
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
    if (x < 0.5) return lanczos(x + 1.0) / x;
    return lanczos(x);
}

SolverParams::SolverParams(double alpha, double p) : alpha_(alpha), p_(p)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must satisfy 0 < alpha < 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must satisfy 0 <= p <= 1");
    gamma_2ma_ = gamma_fn(2.0 - alpha);
    gamma_1ma_ = gamma_fn(1.0 - alpha);
}

GridSpec::GridSpec(double h, double T, double x_min, double x_max, PaddingPolicy padding)
    : h_(h), T_(T)
{
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("h must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be positive");
    const double steps = std::round(T / h);
    if (steps < 1.0 || std::abs(steps * h - T) > h * 1e-9) {
        std::ostringstream os;
        os << "T = " << T << " must be a mesh multiple of h = " << h << " (n_time = T/h must be an integer)";
        throw std::invalid_argument(os.str());
    }
    n_time_ = static_cast<int>(steps);
    i_min_ = checked_index(x_min, h, "x_min");
    i_max_ = checked_index(x_max, h, "x_max");
    if (i_max_ < i_min_) throw std::invalid_argument("x_max must not be below x_min");
    if (padding == PaddingPolicy::light_cone && !covers_light_cone()) {
        std::ostringstream os;
        os << "domain [" << x_min << ", " << x_max << "] is narrower than the light cone: "
           << "x_max - x_min must be at least 2T + 2h = " << 2.0 * T + 2.0 * h;
        throw std::invalid_argument(os.str());
    }
}

long GridSpec::global_index_of(double x) const
{
    // cells are half-open on the left: (x_i - h/2, x_i + h/2]
    return static_cast<long>(std::ceil(x / h_ - 0.5));
}

bool GridSpec::covers_light_cone() const
{
    return static_cast<double>(i_max_ - i_min_) >= 2.0 * static_cast<double>(n_time_) + 2.0;
}

double l1_weight(double alpha, int k)
{
    if (k < 1) throw std::invalid_argument("l1_weight: k must be >= 1");
    const double kk = static_cast<double>(k);
    return -std::pow(kk, 1.0 - alpha) * std::expm1((1.0 - alpha) * std::log1p(-1.0 / kk));
}

CoefficientTable::CoefficientTable(const SolverParams& params, int n_time)
    : alpha_(params.alpha()), n_time_(n_time)
{
    if (n_time < 1) throw std::invalid_argument("CoefficientTable: n_time must be >= 1");
    const auto n = static_cast<std::size_t>(n_time);
    b_.assign(n + 2, 0.0);
    d_.assign(n + 1, 0.0);
    for (int k = 1; k <= n_time + 1; ++k) b_[static_cast<std::size_t>(k)] = l1_weight(alpha_, k);
    // consecutive b_k lie within a factor two of each other, so each difference is exact
    for (std::size_t k = 1; k <= n; ++k) d_[k] = b_[k] - b_[k + 1];
}

double stability_mesh_bound(const SolverParams& params)
{
    const double a = params.alpha();
    return std::pow(1.0 - a, 1.0 / (2.0 * a));
}

SolutionHistory::SolutionHistory(const GridSpec& grid, std::span<const double> initial)
    : grid_(grid), n_space_(grid.n_space()), filled_(1)
{
    if (initial.size() != n_space_) throw std::invalid_argument("SolutionHistory: initial row has wrong length");
    for (double v : initial)
        if (!std::isfinite(v)) throw std::invalid_argument("SolutionHistory: initial row is not finite");
    data_.assign(static_cast<std::size_t>(grid.n_time() + 1) * n_space_, 0.0);
    std::copy(initial.begin(), initial.end(), data_.begin());
}

std::span<const double> SolutionHistory::row(int n) const
{
    if (n < 0 || n >= filled_) {
        std::ostringstream os;
        os << "SolutionHistory: row " << n << " not populated (rows filled: " << filled_ << ")";
        throw std::out_of_range(os.str());
    }
    return {row_ptr(n), n_space_};
}

void SolutionHistory::set_row(int n, std::span<const double> values)
{
    if (n < 1 || n > grid_.n_time()) throw std::out_of_range("SolutionHistory: row index outside 1..n_time");
    if (n > filled_) throw std::out_of_range("SolutionHistory: earlier rows missing");
    if (values.size() != n_space_) throw std::invalid_argument("SolutionHistory: row has wrong length");
    std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(n * n_space_));
    filled_ = std::max(filled_, n + 1);
}

double SolutionHistory::at(int n, long i) const
{
    if (n < 0 || n >= filled_) row(n);  // throws
    if (!grid_.contains_global(i)) return 0.0;
    return row_ptr(n)[grid_.local(i)];
}

}  // namespace fmd
