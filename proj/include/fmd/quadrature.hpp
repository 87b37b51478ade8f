#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace fmd {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    /// Bisection depth of the Gauss-Kronrod rule.
    unsigned max_depth = 20;
};

/// Integrand receiving y together with the distances y - a and b - y to the
/// interval ends, both computed without rounding against the graded end.
using EndpointIntegrand = std::function<double(double y, double from_a, double to_b)>;

/// Integral over [a, b]. Smooth integrands use adaptive Gauss-Kronrod (15
/// points); if either endpoint is flagged singular the tanh-sinh rule is used,
/// which clusters nodes at both ends and passes the exact endpoint distances.
/// Throws QuadratureError when the error estimate stays above tolerance.
double integrate(const EndpointIntegrand& f, double a, double b, bool singular_a, bool singular_b,
                 const QuadratureOptions& opt = {});

double integrate(const std::function<double(double)>& f, double a, double b, bool singular_a,
                 bool singular_b, const QuadratureOptions& opt = {});

/// Integral over [a, inf) for a > 0 of an integrand decaying like
/// y^-(1 + beta), via y = a z^-m with m = 1 / beta.
double integrate_tail(const std::function<double(double)>& f, double a, double beta,
                      const QuadratureOptions& opt = {});

}  // namespace fmd
