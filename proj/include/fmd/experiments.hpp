#pragma once

#include "fmd/config.hpp"
#include "fmd/diagnostics.hpp"
#include "fmd/scheme.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fmd {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_numerical = 2 };

/// Error measurement region: the central third for the x-independent
/// monomial solution, the cells at least T inside the mesh for the jump-first
/// density (its tails are cut off by the mesh edge), the whole mesh otherwise.
Restriction default_restriction(SourceKind kind, const GridSpec& grid);

/// Cell-average reference solution at time t for monomial and walk sources.
/// Throws ConfigError("source.kind") for kinds without a closed form.
std::vector<double> reference_row(SourceKind kind, const SolverParams& params, double mu, double t,
                                  const GridSpec& grid);

struct SweepResult {
    double alpha;
    NormKind norm;
    std::vector<std::pair<double, double>> errors;  // (h, error at T)
    OrderFit fit;
};

/// Solves at every (alpha, h) of the sweep and fits one order per alpha and
/// norm. Needs at least three step sizes.
std::vector<SweepResult> convergence_sweep(const RunConfig& cfg);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_pdf_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_mass(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatch by subcommand name ("solve", "pdf-compare", ...).
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fmd
