#include "fmd/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace fmd {

namespace {

using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
using ts_rule = boost::math::quadrature::tanh_sinh<double>;

void check(double v, double err, double l1, const QuadratureOptions& opt, const char* what)
{
    if (!std::isfinite(v) || err > opt.rel_tol * l1 + 1e-300) {
        std::ostringstream os;
        os << what << ": no convergence (estimate " << v << ", error " << err << ")";
        throw QuadratureError(os.str());
    }
}

double run_gk(const std::function<double(double)>& g, const QuadratureOptions& opt, const char* what)
{
    double err = 0.0;
    double l1 = 0.0;
    const double v = gk::integrate(g, 0.0, 1.0, opt.max_depth, opt.rel_tol, &err, &l1);
    check(v, err, l1, opt, what);
    return v;
}

}  // namespace

double integrate(const EndpointIntegrand& f, double a, double b, bool singular_a, bool singular_b,
                 const QuadratureOptions& opt)
{
    if (!(b > a)) return 0.0;
    const double len = b - a;
    if (singular_a || singular_b) {
        // tanh-sinh hands over the signed distance to the nearer end: a - y on
        // the left half, b - y on the right half
        auto g = [&](double y, double yc) {
            if (yc < 0.0) return f(y, -yc, b - y);
            return f(y, y - a, yc);
        };
        static thread_local ts_rule rule;
        double err = 0.0, l1 = 0.0;
        std::size_t levels = 0;
        double v = 0.0;
        try {
            v = rule.integrate(g, a, b, opt.rel_tol, &err, &l1, &levels);
        } catch (const std::exception& e) {
            throw QuadratureError(std::string("integrate: ") + e.what());
        }
        // err is the change between the last two levels; each tanh-sinh level
        // roughly doubles the correct digits, so the accepted value is good to
        // about (err / l1)^2
        const double rel = l1 > 0.0 ? err / l1 : 0.0;
        check(v, rel * rel * l1, l1, opt, "integrate");
        return v;
    }
    auto g = [&](double z) { return f(a + len * z, len * z, len * (1.0 - z)) * len; };
    return run_gk(g, opt, "integrate");
}

double integrate(const std::function<double(double)>& f, double a, double b, bool singular_a,
                 bool singular_b, const QuadratureOptions& opt)
{
    return integrate(EndpointIntegrand([&](double y, double, double) { return f(y); }), a, b, singular_a,
                     singular_b, opt);
}

double integrate_tail(const std::function<double(double)>& f, double a, double beta, const QuadratureOptions& opt)
{
    const double m = 1.0 / beta;
    auto g = [&](double z) {
        if (z <= 0.0) return 0.0;
        const double y = a * std::pow(z, -m);
        if (!std::isfinite(y)) return 0.0;
        // dy/dz = m y / z; grouping f(y) y keeps the product finite
        return (f(y) * y) * (m / z);
    };
    return run_gk(g, opt, "integrate_tail");
}

}  // namespace fmd
