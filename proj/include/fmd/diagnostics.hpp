#pragma once

#include "fmd/core.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fmd {

enum class NormKind { l1, l2, linf };

std::string to_string(NormKind kind);
/// Throws std::invalid_argument for unknown names.
NormKind norm_kind_from_string(const std::string& name);

/// (h sum |u_i|^p)^(1/p); linf is max |u_i| and ignores h.
double discrete_norm(std::span<const double> row, double h, NormKind kind);

/// Closed sub-interval of x; cells whose centre lies inside are measured.
struct Restriction {
    double x_lo;
    double x_hi;

    static Restriction full(const GridSpec& grid) { return {grid.x_min(), grid.x_max()}; }
    /// Middle third of the domain.
    static Restriction central_third(const GridSpec& grid);
};

struct ErrorReport {
    double h;
    NormKind norm_kind;
    double value;
    double measured_at;
    Restriction restriction;
};

/// Cell-average oracle: value for global cell i at time t.
using CellOracle = std::function<double(long i, double t)>;

/// Norm of (numeric row - oracle) at time t over the restriction. Throws
/// std::invalid_argument if t is not a populated mesh time or the
/// restriction leaves the mesh.
ErrorReport error_against_oracle(const SolutionHistory& history, const CellOracle& oracle, double t,
                                 NormKind kind, const Restriction& restriction);

/// Same, against a precomputed oracle row over the full mesh.
ErrorReport error_against_row(const SolutionHistory& history, std::span<const double> oracle_row, double t,
                              NormKind kind, const Restriction& restriction);

struct OrderFit {
    double slope;
    double intercept;
    double r_squared;
    std::size_t used;
    /// Explanation of excluded points, empty if none.
    std::string note;
};

/// Least-squares fit of log(error) against log(h). Non-positive errors are
/// dropped and listed in the note. Throws std::invalid_argument for fewer
/// than three usable pairs or h not strictly decreasing.
OrderFit estimate_order(const std::vector<std::pair<double, double>>& pairs);

struct ConvergenceRow {
    double alpha;
    double h;
    NormKind norm_kind;
    double error;
    double slope;
};

/// "alpha,h,norm_kind,error,slope" with 17 significant digits.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

}  // namespace fmd
