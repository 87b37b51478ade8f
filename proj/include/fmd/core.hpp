#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fmd {

/// Gamma function for x > 0.
///
/// Lanczos approximation (g = 7, nine coefficients) on [0.5, inf), shifted
/// by the recurrence Gamma(x) = Gamma(x + 1) / x below 0.5. Relative error
/// is below 1e-14 on (0, 170]. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// Order and asymmetry of the transport operator
///   p (d/dt - d/dx)^alpha u + (1 - p) (d/dt + d/dx)^alpha u = f.
class SolverParams {
public:
    /// Throws std::invalid_argument unless 0 < alpha < 1 and 0 <= p <= 1.
    SolverParams(double alpha, double p);

    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double q() const { return 1.0 - p_; }

    /// Gamma(2 - alpha), the L1 normalisation.
    double gamma_2ma() const { return gamma_2ma_; }
    /// Gamma(1 - alpha).
    double gamma_1ma() const { return gamma_1ma_; }

    friend bool operator==(const SolverParams&, const SolverParams&) = default;

private:
    double alpha_;
    double p_;
    double gamma_2ma_;
    double gamma_1ma_;
};

enum class PaddingPolicy {
    light_cone,  // require x_max - x_min >= 2T + 2h
    none,
};

/// Uniform space-time mesh sharing one step h in x and t.
///
/// Cells are (x_i - h/2, x_i + h/2] with x_i = i h for global indices
/// i_min .. i_max. Local cell k corresponds to global index i_min + k.
class GridSpec {
public:
    /// x_min and x_max are the first and last cell centres; both must be
    /// integer multiples of h, and T must be a mesh multiple of h.
    GridSpec(double h, double T, double x_min, double x_max,
             PaddingPolicy padding = PaddingPolicy::light_cone);

    double h() const { return h_; }
    double T() const { return T_; }
    double x_min() const { return static_cast<double>(i_min_) * h_; }
    double x_max() const { return static_cast<double>(i_max_) * h_; }
    long i_min() const { return i_min_; }
    long i_max() const { return i_max_; }
    int n_time() const { return n_time_; }
    std::size_t n_space() const { return static_cast<std::size_t>(i_max_ - i_min_ + 1); }

    double t(int n) const { return static_cast<double>(n) * h_; }
    double x_global(long i) const { return static_cast<double>(i) * h_; }
    double x_local(std::size_t k) const { return x_global(i_min_ + static_cast<long>(k)); }

    bool contains_global(long i) const { return i >= i_min_ && i <= i_max_; }
    std::size_t local(long i) const { return static_cast<std::size_t>(i - i_min_); }

    /// Cell whose interval contains x, or nothing useful if outside; callers
    /// check with contains_global first.
    long global_index_of(double x) const;

    bool covers_light_cone() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    double h_;
    double T_;
    long i_min_;
    long i_max_;
    int n_time_;
};

/// L1 history weights b_k = k^{1-alpha} - (k-1)^{1-alpha}, k = 1 .. n_time + 1,
/// and their differences d_k = b_k - b_{k+1}, k = 1 .. n_time.
class CoefficientTable {
public:
    CoefficientTable(const SolverParams& params, int n_time);

    double alpha() const { return alpha_; }
    int n_time() const { return n_time_; }

    /// 1-based; valid for 1 <= k <= n_time + 1.
    double b(int k) const { return b_[static_cast<std::size_t>(k)]; }
    /// 1-based; valid for 1 <= k <= n_time.
    double d(int k) const { return d_[static_cast<std::size_t>(k)]; }

    /// Raw arrays, index 0 unused.
    std::span<const double> b_data() const { return b_; }
    std::span<const double> d_data() const { return d_; }

private:
    double alpha_;
    int n_time_;
    std::vector<double> b_;
    std::vector<double> d_;
};

/// k^{1-alpha} - (k-1)^{1-alpha} evaluated without cancellation.
double l1_weight(double alpha, int k);

/// Mesh bound (1 - alpha)^{1/(2 alpha)} under which the explicit scheme is
/// L2-stable.
double stability_mesh_bound(const SolverParams& params);

/// Dense (n_time + 1) x n_space matrix of cell averages u_i^n. Row 0 is the
/// initial condition; rows are filled in order by the solver.
class SolutionHistory {
public:
    SolutionHistory(const GridSpec& grid, std::span<const double> initial);

    const GridSpec& grid() const { return grid_; }
    std::size_t n_space() const { return n_space_; }
    int rows_filled() const { return filled_; }

    /// Throws std::out_of_range if row n has not been populated.
    std::span<const double> row(int n) const;

    /// Writes row n; requires rows 0 .. n-1 to be populated already.
    void set_row(int n, std::span<const double> values);

    /// u_i^n by global cell index; zero outside the mesh.
    double at(int n, long i) const;

    /// Unchecked access for hot loops (row must be populated).
    const double* row_ptr(int n) const
    {
        return data_.data() + static_cast<std::size_t>(n) * n_space_;
    }

private:
    GridSpec grid_;
    std::size_t n_space_;
    int filled_;
    std::vector<double> data_;
};

}  // namespace fmd
