#pragma once

#include "fmd/core.hpp"

#include <span>

namespace fmd {

/// plus selects (d/dt + d/dx)^alpha, minus selects (d/dt - d/dx)^alpha.
enum class OperatorSign { plus, minus };

/// How reads outside the mesh are treated.
enum class BoundaryReads {
    zero,    // whole-line problem with compact support
    strict,  // throw std::out_of_range, for debugging index arithmetic
};

/// Discrete fractional material derivative at global cell i, time level n:
///
///   h^-a / Gamma(2-a) * [ u_{i-+1}^n - sum_{j<n} d_{n-j} u_{i-+(n-j+1)}^j ]
///
/// where the upper sign belongs to OperatorSign::plus.
double discrete_material_derivative(const SolutionHistory& history, int n, long i, OperatorSign sign,
                                    const CoefficientTable& coeffs,
                                    BoundaryReads reads = BoundaryReads::zero);

/// p * delta_minus + (1 - p) * delta_plus.
double combined_operator(const SolutionHistory& history, int n, long i, const SolverParams& params,
                         const CoefficientTable& coeffs, BoundaryReads reads = BoundaryReads::zero);

/// Row form of discrete_material_derivative over every cell of the mesh.
/// Accumulates j-outer over contiguous rows; out-of-mesh reads are zero.
void material_derivative_row(const SolutionHistory& history, int n, OperatorSign sign,
                             const CoefficientTable& coeffs, std::span<double> out);

/// Row form of combined_operator.
void combined_operator_row(const SolutionHistory& history, int n, const SolverParams& params,
                           const CoefficientTable& coeffs, std::span<double> out);

}  // namespace fmd
