#include "fmd/kernel_oracle.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fmd {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

struct Rule {
    std::vector<double> x;  // on [-1, 1]
    std::vector<double> w;
};

template <unsigned N>
Rule make_rule()
{
    using g = boost::math::quadrature::gauss<double, N>;
    Rule r;
    const auto& a = g::abscissa();
    const auto& w = g::weights();
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0.0) {
            r.x.push_back(0.0);
            r.w.push_back(w[k]);
            continue;
        }
        r.x.push_back(-a[k]);
        r.w.push_back(w[k]);
        r.x.push_back(a[k]);
        r.w.push_back(w[k]);
    }
    return r;
}

const Rule& rule8()
{
    static const Rule r = make_rule<8>();
    return r;
}

const Rule& rule16()
{
    static const Rule r = make_rule<16>();
    return r;
}

struct ContourSum {
    cd value;
    int nodes;
    double min_abs_zeta;
};

// Composite rule over [a, b] split into n panels; f returns the integrand.
template <class F>
cd composite(F&& f, double a, double b, long n, int& nodes)
{
    const Rule& r = rule8();
    const double len = (b - a) / static_cast<double>(n);
    cd acc = 0.0;
    for (long k = 0; k < n; ++k) {
        const double c = a + (static_cast<double>(k) + 0.5) * len;
        for (std::size_t q = 0; q < r.x.size(); ++q) acc += r.w[q] * 0.5 * len * f(c + 0.5 * len * r.x[q]);
    }
    nodes += static_cast<int>(n * static_cast<long>(r.x.size()));
    return acc;
}

ContourSum contour_sum(const KernelQuery& qy, double t, int level)
{
    const double sigma0 = 1.0 / t;
    const double Y = std::abs(qy.xi) + 1.0 / t;
    const double R = qy.contour.ray_length / t;
    const long scale = 1L << level;
    const long n_v = std::max(1L, static_cast<long>(std::ceil(2.0 * Y * t))) * scale;
    const long n_r = std::max(1L, static_cast<long>(std::ceil(qy.contour.ray_length))) * scale;
    double min_z = std::numeric_limits<double>::infinity();
    auto g = [&](cd s) {
        const cd z = zeta(qy.alpha, qy.p, qy.xi, s);
        min_z = std::min(min_z, std::abs(z));
        return std::exp(s * t) / z;
    };
    int nodes = 0;
    const cd bottom = composite([&](double r) { return g(cd(sigma0 - r, -Y)); }, 0.0, R, n_r, nodes);
    const cd vertical = composite([&](double w) { return g(cd(sigma0, w)); }, -Y, Y, n_v, nodes);
    const cd top = composite([&](double r) { return g(cd(sigma0 - r, Y)); }, 0.0, R, n_r, nodes);
    const cd total = (bottom + I * vertical - top) / (2.0 * std::numbers::pi * I);
    return {total, nodes, min_z};
}

}  // namespace

std::complex<double> zeta(double alpha, double p, double xi, std::complex<double> s)
{
    return p * std::pow(s - I * xi, alpha) + (1.0 - p) * std::pow(s + I * xi, alpha);
}

PEvaluation eval_P_at(const KernelQuery& query, double t)
{
    if (!(query.alpha > 0.0 && query.alpha < 1.0)) throw std::invalid_argument("kernel: alpha must be in (0, 1)");
    if (!(query.p >= 0.0 && query.p <= 1.0)) throw std::invalid_argument("kernel: p must be in [0, 1]");
    if (!(t > 0.0)) throw std::invalid_argument("kernel: t must be positive");
    if (query.contour.min_nodes < 16) throw std::invalid_argument("kernel: contour needs at least 16 nodes");
    int level = 0;
    ContourSum prev = contour_sum(query, t, level);
    while (prev.nodes < query.contour.min_nodes) prev = contour_sum(query, t, ++level);
    for (;;) {
        const ContourSum cur = contour_sum(query, t, ++level);
        if (!(cur.min_abs_zeta > 0.0) || !(prev.min_abs_zeta > 0.0))
            throw std::logic_error("kernel: contour node hit a zero of zeta");
        if (std::abs(cur.value - prev.value) <= query.contour.rel_tol * std::abs(cur.value))
            return {cur.value, cur.nodes, std::min(cur.min_abs_zeta, prev.min_abs_zeta)};
        if (cur.nodes * 2 > query.contour.max_nodes) {
            std::ostringstream os;
            os << "kernel: P(xi = " << query.xi << ", t = " << t << ") not converged with " << cur.nodes
               << " contour nodes (limit " << query.contour.max_nodes << ")";
            throw KernelConvergenceError(os.str());
        }
        prev = cur;
    }
}

std::complex<double> eval_P(const KernelQuery& query) { return eval_P_at(query, 1.0).value; }

KernelModel::KernelModel(double alpha, double p, double t, double x_reach, const FourierSpec& spec,
                         const ContourSpec& contour)
    : alpha_(alpha), p_(p), t_(t), window_(spec.window)
{
    if (!(t > 0.0)) throw std::invalid_argument("kernel: t must be positive");
    if (!(spec.window > 0.0) || !(spec.kappa_factor > 0.0)) throw std::invalid_argument("kernel: bad window");
    x_reach_ = std::max(std::abs(x_reach), t * (1.0 + 9.0 / spec.window));
    xi_max_ = spec.kappa_factor * spec.window / t;
    const double panel = 2.0 * std::numbers::pi / (x_reach_ + t);
    const long n_panels = static_cast<long>(std::ceil(2.0 * xi_max_ / panel));
    const double len = 2.0 * xi_max_ / static_cast<double>(n_panels);
    const Rule& r = rule16();
    std::vector<double> w;
    for (long k = 0; k < n_panels; ++k) {
        const double c = -xi_max_ + (static_cast<double>(k) + 0.5) * len;
        for (std::size_t q = 0; q < r.x.size(); ++q) {
            xi_.push_back(c + 0.5 * len * r.x[q]);
            w.push_back(0.5 * len * r.w[q]);
        }
    }
    coef_.resize(xi_.size());
    const long nq = static_cast<long>(xi_.size());
    bool failed = false;
    std::string message;
#pragma omp parallel for schedule(dynamic, 16)
    for (long q = 0; q < nq; ++q) {
        try {
            const auto k = static_cast<std::size_t>(q);
            const double kappa = xi_[k] * t / window_;
            const KernelQuery qy{alpha_, p_, xi_[k], contour};
            coef_[k] = w[k] * std::exp(-0.5 * kappa * kappa) * eval_P_at(qy, t).value / (2.0 * std::numbers::pi);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                message = e.what();
            }
        }
    }
    if (failed) throw KernelConvergenceError(message);
}

double KernelModel::G(double x) const
{
    if (std::abs(x) > x_reach_ * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "kernel: |x| = " << std::abs(x) << " beyond the quadrature reach " << x_reach_;
        throw std::invalid_argument(os.str());
    }
    double acc = 0.0;
    for (std::size_t q = 0; q < xi_.size(); ++q) acc += (coef_[q] * std::exp(I * (xi_[q] * x))).real();
    return acc;
}

double KernelModel::mass() const
{
    const double X = t_ * (1.0 + 9.0 / window_);
    const double hx_max = 0.9 * std::numbers::pi / xi_max_;
    const long half = static_cast<long>(std::ceil(X / hx_max));
    const double hx = X / static_cast<double>(half);
    double acc = 0.0;
    for (long k = -half; k <= half; ++k) acc += G(static_cast<double>(k) * hx);
    return hx * acc;
}

double eval_G1(double x, const KernelQuery& query, const FourierSpec& spec)
{
    return KernelModel(query.alpha, query.p, 1.0, std::abs(x), spec, query.contour).G(x);
}

double kernel_mass(double t, const KernelQuery& query, const FourierSpec& spec)
{
    return KernelModel(query.alpha, query.p, t, 0.0, spec, query.contour).mass();
}

}  // namespace fmd
