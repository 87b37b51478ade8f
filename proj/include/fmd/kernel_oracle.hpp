#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace fmd {

class KernelConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bromwich contour for the inverse Laplace transform of 1 / zeta(xi, s),
///   zeta(xi, s) = p (s - i xi)^a + (1 - p) (s + i xi)^a.
///
/// The contour is a box: the vertical segment Re s = 1/t, |Im s| <= |xi| + 1/t,
/// closed by two horizontal rays Im s = +-(|xi| + 1/t) running left to
/// Re s = 1/t - ray_length / t. zeta has no zeros for Re s > 0 nor for
/// |Im s| > |xi| (both powers then lie in one open half-plane), and the
/// branch cuts of the principal powers sit on Im s = +-xi, Re s <= 0, so the
/// box never meets a singularity. Each piece uses composite Gauss-Legendre
/// panels of length about 1/t; the panel count doubles until two successive
/// values agree to rel_tol.
struct ContourSpec {
    double ray_length = 40.0;
    int min_nodes = 16;
    int max_nodes = 1 << 14;
    double rel_tol = 1e-8;
};

struct KernelQuery {
    double alpha;
    double p;
    double xi;
    ContourSpec contour{};
};

struct PEvaluation {
    std::complex<double> value;
    int nodes;            // node count of the accepted evaluation
    double min_abs_zeta;  // smallest |zeta| over the contour nodes
};

/// zeta(xi, s) with principal-branch powers.
std::complex<double> zeta(double alpha, double p, double xi, std::complex<double> s);

/// P(xi, t) = inverse Laplace transform of 1 / zeta(xi, .) at t > 0. Throws
/// KernelConvergenceError past contour.max_nodes and std::logic_error if a
/// node hits a zero of zeta.
PEvaluation eval_P_at(const KernelQuery& query, double t);

/// P(xi, 1).
std::complex<double> eval_P(const KernelQuery& query);

/// Spectral truncation for G_t(x) = (1/2pi) int e^{i xi x} P(xi, t) dxi.
///
/// P decays only like |xi|^-a, so the integral is regularised by the
/// Gaussian window W(xi t) = exp(-(xi t)^2 / (2 window^2)) and truncated at
/// |xi t| = kappa_factor * window. The windowed kernel is G_t blurred by a
/// Gaussian of width t / window; W(0) = 1 keeps the mass exact.
struct FourierSpec {
    double window = 12.0;
    double kappa_factor = 8.5;
};

/// G_t sampled through a fixed xi-quadrature, with P cached at the nodes.
class KernelModel {
public:
    /// x_reach bounds the |x| at which G will be evaluated; it fixes the
    /// panel width 2 pi / (x_reach + t) of the xi-quadrature (16 Gauss nodes
    /// per panel, symmetric about 0).
    KernelModel(double alpha, double p, double t, double x_reach, const FourierSpec& spec = {},
                const ContourSpec& contour = {});

    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double t() const { return t_; }
    double x_reach() const { return x_reach_; }
    std::size_t xi_nodes() const { return xi_.size(); }
    /// Largest |xi| in the quadrature.
    double xi_max() const { return xi_max_; }

    /// Windowed G_t(x); throws std::invalid_argument for |x| > x_reach.
    double G(double x) const;

    /// h_x * sum G(x_k) over a uniform grid on [-X, X], X = t (1 + 9 / window),
    /// with h_x below the Nyquist spacing pi / xi_max.
    double mass() const;

private:
    double alpha_;
    double p_;
    double t_;
    double x_reach_;
    double window_;
    double xi_max_;
    std::vector<double> xi_;
    std::vector<std::complex<double>> coef_;  // w_q W(xi_q t) P(xi_q, t)
};

/// Windowed G_1(x).
double eval_G1(double x, const KernelQuery& query, const FourierSpec& spec = {});

/// Integral of G_t over the line; expected t^(a-1) / Gamma(a).
double kernel_mass(double t, const KernelQuery& query, const FourierSpec& spec = {});

}  // namespace fmd
