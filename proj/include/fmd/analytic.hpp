#pragma once

#include "fmd/core.hpp"
#include "fmd/quadrature.hpp"

#include <string>
#include <vector>

namespace fmd {

enum class WalkKind { wait_first, jump_first, standard_walk };

std::string to_string(WalkKind kind);
/// Throws std::invalid_argument for unknown names.
WalkKind walk_kind_from_string(const std::string& name);

/// Self-similar walk density u(x, t) = phi(x / t) / t.
///
/// phi follows the closed forms of the wait-first, jump-first and standard
/// Levy walks, with p the weight of the branch living on y > 0. The
/// constructor integrates phi over the line and throws std::invalid_argument
/// if the mass differs from 1 by more than 1e-6 (this rejects the degenerate
/// standard walk at p in {0, 1}, whose density is an atom).
class SimilarityProfile {
public:
    SimilarityProfile(WalkKind kind, double alpha, double p);

    /// Profile solving p (d_t - d_x)^a u + (1-p) (d_t + d_x)^a u = f for the
    /// matching walk source. That equation moves weight p to the left, so the
    /// profile is built with 1 - p.
    static SimilarityProfile for_equation(WalkKind kind, const SolverParams& params);

    WalkKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double p() const { return p_; }
    /// Integral of phi over the line, as measured at construction.
    double mass() const { return mass_; }

private:
    WalkKind kind_;
    double alpha_;
    double p_;
    double mass_;
};

/// phi(y). At a singular point the limit is returned, +infinity where it
/// diverges; never NaN for finite y.
double phi(const SimilarityProfile& profile, double y);

/// phi(x / t) / t; throws std::invalid_argument for t <= 0.
double pdf_at(const SimilarityProfile& profile, double x, double t);

/// Integral of phi over [y0, y1] (either end may be infinite), split at the
/// singular abscissae {-1, 0, 1}.
double profile_integral(const SimilarityProfile& profile, double y0, double y1, double rel_tol = 1e-8);

/// Average of pdf_at(., t) over global cell i of the grid. Throws
/// QuadratureError naming the cell on non-convergence.
double profile_cell_average(const SimilarityProfile& profile, long i, double t, const GridSpec& grid);

/// profile_cell_average for every cell of the mesh.
std::vector<double> profile_cell_averages(const SimilarityProfile& profile, double t, const GridSpec& grid);

/// Gamma(mu + 1) t^(mu + alpha) / Gamma(mu + alpha + 1), the solution for
/// f = t^mu with zero initial data.
double monomial_solution(double mu, double alpha, double t);

}  // namespace fmd
