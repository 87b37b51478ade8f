#pragma once

#include "fmd/core.hpp"

#include <istream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fmd {

enum class SourceKind { none, wait_first, jump_first, standard_walk, monomial, sampled };

/// Name used in configs and CSV metadata ("wait_first", "monomial", ...).
std::string to_string(SourceKind kind);
/// Throws std::invalid_argument for unknown names.
SourceKind source_kind_from_string(const std::string& name);

/// Mollified Dirac delta (1 + cos(pi x / (K h))) / (2 K h) on |x| <= K h.
struct DeltaSpec {
    int K = 2;
    /// Rescale the stencil to unit discrete mass before any clipping at the
    /// mesh edge. Off reproduces the raw formula.
    bool rescale = true;

    friend bool operator==(const DeltaSpec&, const DeltaSpec&) = default;
};

/// Grid values f_i^n keyed by (n, global i); absent entries are zero.
class SampledSource {
public:
    SampledSource() = default;

    void set(int n, long i, double value);
    double get(int n, long i) const;
    std::size_t size() const { return values_.size(); }

    /// Reads "n,i,value" CSV. Lines starting with '#' and a header line whose
    /// first field is not numeric are skipped. Entries outside the grid
    /// (n > n_time + 1 or i off-mesh) are rejected.
    static SampledSource read_csv(std::istream& in, const GridSpec& grid);
    static SampledSource read_csv_file(const std::string& path, const GridSpec& grid);

private:
    std::map<std::pair<int, long>, double> values_;
};

/// Right-hand side f(x, t) of the transport equation.
class SourceTerm {
public:
    static SourceTerm none(const SolverParams& params);
    static SourceTerm wait_first(const SolverParams& params);
    static SourceTerm jump_first(const SolverParams& params);
    static SourceTerm standard_walk(const SolverParams& params);
    /// f = t^mu; throws for mu < 0.
    static SourceTerm monomial(const SolverParams& params, double mu);
    static SourceTerm sampled(const SolverParams& params, SampledSource values);

    SourceKind kind() const { return kind_; }
    const SolverParams& params() const { return params_; }
    double mu() const { return mu_; }
    const SampledSource& samples() const { return *samples_; }

    /// True for kinds whose amplitude carries the t^-alpha / Gamma(1-alpha)
    /// factor, which are undefined at t = 0.
    bool singular_at_zero() const;

private:
    SourceTerm(SourceKind kind, const SolverParams& params) : kind_(kind), params_(params) {}

    SourceKind kind_;
    SolverParams params_;
    double mu_ = 0.0;
    std::shared_ptr<const SampledSource> samples_;
};

/// Cell values of the mollified delta centred at `center`, one per mesh cell.
/// Rescaling uses the full stencil, so a stencil clipped by the mesh edge
/// loses mass. Throws std::invalid_argument if center lies outside
/// [x_min, x_max] or K < 1.
std::vector<double> discretize_delta(double center, const DeltaSpec& spec, const GridSpec& grid);

/// f_i^n on every mesh cell at t_n = n h. n may exceed n_time by one (the
/// advanced-source scheme reads t_{n+1}). Throws std::invalid_argument for
/// n = 0 on singular kinds.
std::vector<double> source_values(const SourceTerm& term, int n, const GridSpec& grid,
                                  const DeltaSpec& delta = {});

/// Exact average of the jump-first source over (a, b] at time t > 0.
double jump_first_cell_average(const SolverParams& params, double a, double b, double t);

/// rho = h * sum_i f_i^n - t_n^-alpha / Gamma(1 - alpha).
double validate_source_mass(const SourceTerm& term, int n, const GridSpec& grid,
                            const DeltaSpec& delta = {});

}  // namespace fmd
