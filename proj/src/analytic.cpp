#include "fmd/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fmd {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// omy = 1 - y and opy = 1 + y are passed separately so that callers near
// y = +-1 can supply them without cancellation.
//
// All three profiles share the denominator A^2 + B^2 + 2 A B cos(a pi) with
// A = p omy^a, B = q opy^a, written as (A - B)^2 + 4 A B cos^2(a pi / 2) to
// stay non-negative. num / D is evaluated after scaling by max(A, B).
struct Weights {
    double A;
    double B;
    double c2;  // 4 cos^2(a pi / 2)
};

Weights weights(double a, double p, double omy, double opy)
{
    const double c = std::cos(0.5 * a * std::numbers::pi);
    return {p * std::pow(omy, a), (1.0 - p) * std::pow(opy, a), 4.0 * c * c};
}

// x / (M D) with x already divided by M = max(A, B); D is scaled by M^2.
double over_denom(double x_over_m, const Weights& w, double m)
{
    const double a = w.A / m, b = w.B / m;
    return x_over_m / (m * ((a - b) * (a - b) + w.c2 * a * b));
}

double sine_factor(double a) { return std::sin(a * std::numbers::pi) / std::numbers::pi; }

double wait_first_phi(double a, double p, double y, double omy, double opy)
{
    if (omy < 0.0 || opy < 0.0) return 0.0;
    if (y == 0.0) return inf;
    const Weights w = weights(a, p, omy, opy);
    const double m = std::max(w.A, w.B);
    if (m == 0.0) return inf;
    const double num = y > 0.0 ? w.A : w.B;
    if (num == 0.0) return 0.0;
    return sine_factor(a) * std::pow(std::abs(y), a - 1.0) * over_denom(num / m, w, m);
}

double jump_first_phi(double a, double p, double y, double omy, double opy)
{
    const double q = 1.0 - p;
    const double s = sine_factor(a);
    if (omy < 0.0) return p * s / (y * (p * std::pow(-omy, a) + q * std::pow(opy, a)));
    if (opy < 0.0) return q * s / (-y * (q * std::pow(-opy, a) + p * std::pow(omy, a)));
    if (omy == 0.0 && q == 0.0) return inf;
    if (opy == 0.0 && p == 0.0) return inf;
    if (p * q == 0.0) return 0.0;
    const Weights w = weights(a, p, omy, opy);
    const double m = std::max(w.A, w.B);
    if (y == 0.0) return p * q * s * 2.0 * a * over_denom(1.0 / m, w, m);
    // |(1+y)^a - (1-y)^a|; near 0 it is (1-|y|)^a expm1(2 a atanh|y|) to avoid cancellation
    const double ay = std::abs(y);
    const double near = y > 0.0 ? omy : opy;
    const double far = y > 0.0 ? opy : omy;
    const double diff = ay < 0.5 ? std::pow(near, a) * std::expm1(2.0 * a * std::atanh(ay))
                                 : std::pow(far, a) - std::pow(near, a);
    return p * q * s * over_denom(diff / m, w, m) / ay;
}

double standard_walk_phi(double a, double p, double omy, double opy)
{
    if (omy < 0.0 || opy < 0.0) return 0.0;
    if (p * (1.0 - p) == 0.0) return 0.0;
    if (omy == 0.0 || opy == 0.0) return inf;
    // p q (omy^(a-1) opy^a + opy^(a-1) omy^a) = A B (1/omy + 1/opy) = 2 A B / (omy opy)
    const Weights w = weights(a, p, omy, opy);
    const double m = std::max(w.A, w.B);
    return sine_factor(a) * 2.0 / (omy * opy) * over_denom((w.A / m) * w.B, w, m);
}

double phi_split(const SimilarityProfile& profile, double y, double omy, double opy)
{
    switch (profile.kind()) {
    case WalkKind::wait_first: return wait_first_phi(profile.alpha(), profile.p(), y, omy, opy);
    case WalkKind::jump_first: return jump_first_phi(profile.alpha(), profile.p(), y, omy, opy);
    case WalkKind::standard_walk: return standard_walk_phi(profile.alpha(), profile.p(), omy, opy);
    }
    return 0.0;
}

QuadratureOptions options_for(double rel_tol)
{
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    return opt;
}

bool is_break(double y) { return y == -1.0 || y == 0.0 || y == 1.0; }

// Finite interval [y0, y1], split at the break points.
double integrate_finite(const SimilarityProfile& prof, double y0, double y1, double rel_tol)
{
    const auto opt = options_for(rel_tol);
    double cuts[5];
    int nc = 0;
    cuts[nc++] = y0;
    for (double b : {-1.0, 0.0, 1.0})
        if (b > y0 && b < y1) cuts[nc++] = b;
    cuts[nc++] = y1;
    double total = 0.0;
    for (int k = 0; k + 1 < nc; ++k) {
        const double c0 = cuts[k];
        const double c1 = cuts[k + 1];
        const EndpointIntegrand f = [&](double y, double da, double db) {
            const double omy = c1 == 1.0 ? db : c0 == 1.0 ? -da : 1.0 - y;
            const double opy = c0 == -1.0 ? da : c1 == -1.0 ? -db : 1.0 + y;
            return phi_split(prof, y, omy, opy);
        };
        total += integrate(f, c0, c1, is_break(c0), is_break(c1), opt);
    }
    return total;
}

}  // namespace

std::string to_string(WalkKind kind)
{
    switch (kind) {
    case WalkKind::wait_first: return "wait_first";
    case WalkKind::jump_first: return "jump_first";
    case WalkKind::standard_walk: return "standard_walk";
    }
    return "unknown";
}

WalkKind walk_kind_from_string(const std::string& name)
{
    for (auto k : {WalkKind::wait_first, WalkKind::jump_first, WalkKind::standard_walk})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown walk kind '" + name + "'");
}

SimilarityProfile::SimilarityProfile(WalkKind kind, double alpha, double p)
    : kind_(kind), alpha_(alpha), p_(p), mass_(0.0)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must satisfy 0 < alpha < 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must satisfy 0 <= p <= 1");
    const double inf_y = std::numeric_limits<double>::infinity();
    mass_ = kind == WalkKind::jump_first ? profile_integral(*this, -inf_y, inf_y, 1e-10)
                                         : profile_integral(*this, -1.0, 1.0, 1e-10);
    if (!(std::abs(mass_ - 1.0) <= 1e-6)) {
        std::ostringstream os;
        os << to_string(kind) << " profile (alpha = " << alpha << ", p = " << p << ") has mass " << mass_
           << ", expected 1";
        throw std::invalid_argument(os.str());
    }
}

SimilarityProfile SimilarityProfile::for_equation(WalkKind kind, const SolverParams& params)
{
    return {kind, params.alpha(), 1.0 - params.p()};
}

double phi(const SimilarityProfile& profile, double y)
{
    if (std::isnan(y)) throw std::invalid_argument("phi: y is NaN");
    return phi_split(profile, y, 1.0 - y, 1.0 + y);
}

double pdf_at(const SimilarityProfile& profile, double x, double t)
{
    if (!(t > 0.0)) throw std::invalid_argument("pdf_at: t must be positive");
    return phi(profile, x / t) / t;
}

double profile_integral(const SimilarityProfile& profile, double y0, double y1, double rel_tol)
{
    if (!(y1 > y0)) return 0.0;
    if (profile.kind() != WalkKind::jump_first) {
        y0 = std::max(y0, -1.0);
        y1 = std::min(y1, 1.0);
        if (!(y1 > y0)) return 0.0;
        return integrate_finite(profile, y0, y1, rel_tol);
    }
    // jump-first tails decay like |y|^(-1-alpha); [2, inf) goes through a tail map
    const auto f = [&](double y) { return phi(profile, y); };
    const auto opt = options_for(rel_tol);
    double total = 0.0;
    const double lo = std::max(y0, -2.0);
    const double hi = std::min(y1, 2.0);
    if (hi > lo) total += integrate_finite(profile, lo, hi, rel_tol);
    if (y1 > 2.0) {
        const double a = std::max(y0, 2.0);
        total += std::isinf(y1) ? integrate_tail(f, a, profile.alpha(), opt)
                                : integrate(f, a, y1, false, false, opt);
    }
    if (y0 < -2.0) {
        const auto g = [&](double y) { return phi(profile, -y); };
        const double a = std::max(-y1, 2.0);
        total += std::isinf(y0) ? integrate_tail(g, a, profile.alpha(), opt)
                                : integrate(g, a, -y0, false, false, opt);
    }
    return total;
}

double profile_cell_average(const SimilarityProfile& profile, long i, double t, const GridSpec& grid)
{
    if (!(t > 0.0)) throw std::invalid_argument("profile_cell_average: t must be positive");
    const double h = grid.h();
    const double x0 = (static_cast<double>(i) - 0.5) * h;
    const double x1 = (static_cast<double>(i) + 0.5) * h;
    try {
        return profile_integral(profile, x0 / t, x1 / t) / h;
    } catch (const QuadratureError& e) {
        std::ostringstream os;
        os << "profile_cell_average: cell " << i << " at t = " << t << ": " << e.what();
        throw QuadratureError(os.str());
    }
}

std::vector<double> profile_cell_averages(const SimilarityProfile& profile, double t, const GridSpec& grid)
{
    std::vector<double> out(grid.n_space());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = profile_cell_average(profile, grid.i_min() + static_cast<long>(k), t, grid);
    return out;
}

double monomial_solution(double mu, double alpha, double t)
{
    if (!(mu >= 0.0)) throw std::invalid_argument("monomial_solution: mu must be >= 0");
    if (t <= 0.0) return 0.0;
    return gamma_fn(mu + 1.0) * std::pow(t, mu + alpha) / gamma_fn(mu + alpha + 1.0);
}

}  // namespace fmd
