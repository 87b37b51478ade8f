#pragma once

#include "fmd/core.hpp"
#include "fmd/diagnostics.hpp"
#include "fmd/scheme.hpp"
#include "fmd/sources.hpp"

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmd {

/// Invalid configuration; the message starts with the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(key)
    {
    }
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

enum class InitialKind { automatic, zero, delta };

/// Flat key = value run description. '#' starts a comment; blank lines are
/// ignored. Keys:
///
///   alpha, p, h, T           reals; h also accepts 2^-k
///   x_min, x_max             domain (multiples of h); default depends on source
///   padding                  light_cone | none
///   variant                  standard | advanced_source
///   source.kind              none | wait_first | jump_first | standard_walk | monomial | sampled
///   source.mu                exponent of the monomial source
///   source.file              n,i,value CSV for the sampled source
///   delta.K, delta.rescale   mollified delta half-width and normalisation
///   initial                  auto | zero | delta (auto: delta for walk sources)
///   output, output.sparse    CSV paths
///   times                    stored times (comma list); empty keeps every store_every-th row
///   store_every              row thinning when times is empty
///   norms                    comma list of l1, l2, linf
///   sweep.h, sweep.alpha     convergence sweep lists
///   kernel.t, kernel.x_max, kernel.nx, kernel.window
struct RunConfig {
    double alpha = 0.5;
    double p = 0.5;
    double h = 1.0 / 512.0;
    double T = 1.0;
    std::optional<double> x_min;
    std::optional<double> x_max;
    PaddingPolicy padding = PaddingPolicy::light_cone;
    SchemeVariant variant = SchemeVariant::advanced_source;
    SourceKind source_kind = SourceKind::wait_first;
    double mu = 1.0;
    std::string source_file;
    DeltaSpec delta{};
    InitialKind initial = InitialKind::automatic;
    std::string output = "out.csv";
    std::string output_sparse;
    std::vector<double> times;
    int store_every = 1;
    std::vector<NormKind> norms{NormKind::l1, NormKind::l2, NormKind::linf};
    std::vector<double> sweep_h;
    std::vector<double> sweep_alpha;
    double kernel_t = 1.0;
    double kernel_x_max = 2.0;
    int kernel_nx = 401;
    double kernel_window = 12.0;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Sets one key; throws ConfigError naming the key on an unknown key or a
/// malformed value.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// "key=value" form of set_key, as used by --override.
void apply_override(RunConfig& cfg, const std::string& assignment);

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

/// Text that parse_config maps back to an equal RunConfig.
std::string serialize(const RunConfig& cfg);

/// Reals with optional 2^k form ("0.25", "2^-9").
double parse_real(const std::string& key, const std::string& text);

/// Resolved domain for a given step, rounding the default outward to
/// multiples of h.
std::pair<double, double> domain_for(const RunConfig& cfg, double h);

/// Builds the solver configuration at (alpha, h). Mesh and source errors are
/// rethrown as ConfigError naming the key involved.
SolveConfig make_solve_config(const RunConfig& cfg, double alpha, double h);
SolveConfig make_solve_config(const RunConfig& cfg);

}  // namespace fmd
