#pragma once

#include "fmd/core.hpp"
#include "fmd/sources.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmd {

enum class SchemeVariant {
    standard,         // source sampled at t_n
    advanced_source,  // source sampled at t_{n+1}; conserves probability
};

std::string to_string(SchemeVariant v);
/// Throws std::invalid_argument for unknown names.
SchemeVariant scheme_variant_from_string(const std::string& name);

struct SolveConfig {
    SolverParams params;
    GridSpec grid;
    SourceTerm source;
    std::vector<double> initial;  // psi(x_i), one value per cell
    SchemeVariant variant = SchemeVariant::standard;
    DeltaSpec delta{};
    int store_every = 1;
    /// Require h * sum(initial) = 1 (advanced_source only).
    bool track_mass = false;
};

/// A NaN or infinity appeared in the solution.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(int n, long i, const std::string& what) : std::runtime_error(what), n_(n), i_(i) {}
    int n() const { return n_; }
    long i() const { return i_; }

private:
    int n_;
    long i_;
};

/// Throws std::invalid_argument on an inconsistent config: wrong initial
/// length, non-finite data, a delta source whose stencil would be clipped by
/// the mesh edge, or a unit-mass requirement that the initial row misses.
void validate(const SolveConfig& cfg);

/// Mollified delta at the origin; the initial row of the walk problems.
std::vector<double> delta_initial(const GridSpec& grid, const DeltaSpec& delta = {});

/// Row n of the scheme,
///   u_i^n = sum_{j<n} d_{n-j} (p u_{i+n-j}^j + (1-p) u_{i-n+j}^j)
///           + h^a Gamma(2-a) (p f_{i-1} + (1-p) f_{i+1}),
/// with f taken at level n (standard) or n + 1 (advanced_source). Reads
/// outside the mesh are zero. Accumulates j-outer over contiguous rows and
/// splits cells across OpenMP threads; the result is bitwise identical to
/// step_reference.
std::vector<double> step(const SolutionHistory& history, int n, const SolveConfig& cfg,
                         const CoefficientTable& coeffs);

/// Naive i-outer, j-inner evaluation of the same row.
std::vector<double> step_reference(const SolutionHistory& history, int n, const SolveConfig& cfg,
                                   const CoefficientTable& coeffs);

struct SolveOptions {
    /// Destination for warnings (stability bound); null silences them.
    std::ostream* warnings = nullptr;
};

/// Marches rows 1..n_time. Throws NumericalFailure at the first non-finite
/// cell, naming (n, i).
SolutionHistory solve(const SolveConfig& cfg, const SolveOptions& opt = {});

/// solve with step_reference; the test oracle for small grids.
SolutionHistory solve_reference(const SolveConfig& cfg);

/// m_n = h * sum_i u_i^n for every populated row.
std::vector<double> mass_series(const SolutionHistory& history);

/// Row indices of the requested times; throws std::invalid_argument for a
/// time that is not on the mesh or beyond T.
std::vector<int> rows_for_times(const GridSpec& grid, const std::vector<double>& times);

/// Every store_every-th row plus the last one.
std::vector<int> thinned_rows(const GridSpec& grid, int store_every);

/// Snapshot CSV: '#key=value' metadata lines (alpha, p, h, T, variant,
/// source), then a header "x,t=..." and one line per cell; 17 significant
/// digits throughout.
void write_snapshot_csv(std::ostream& out, const SolutionHistory& history, const SolveConfig& cfg,
                        const std::vector<int>& rows);

/// Sparse "n,i,value" CSV of the given rows (zeros omitted), readable by
/// SampledSource::read_csv.
void write_sparse_csv(std::ostream& out, const SolutionHistory& history, const std::vector<int>& rows);

}  // namespace fmd
