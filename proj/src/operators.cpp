#include "fmd/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fmd {

namespace {

double read(const SolutionHistory& history, int n, long i, BoundaryReads reads)
{
    if (reads == BoundaryReads::strict && !history.grid().contains_global(i)) {
        std::ostringstream os;
        os << "strict read outside mesh: n = " << n << ", i = " << i;
        throw std::out_of_range(os.str());
    }
    return history.at(n, i);
}

void check_level(const SolutionHistory& history, int n, const CoefficientTable& coeffs)
{
    if (n < 1) throw std::out_of_range("material derivative needs n >= 1");
    if (n > coeffs.n_time()) throw std::out_of_range("coefficient table too short for time level");
    history.row(n);  // throws if absent
}

double scale(const SolutionHistory& history, const CoefficientTable& coeffs)
{
    const double a = coeffs.alpha();
    return std::pow(history.grid().h(), -a) / gamma_fn(2.0 - a);
}

// sum_j d_{n-j} u^j_{i + dir (n-j+1)} for every local cell, j in increasing order
void history_sum_row(const SolutionHistory& history, int n, long dir, const CoefficientTable& coeffs,
                     std::span<double> acc)
{
    const auto ns = static_cast<long>(history.n_space());
    for (auto& v : acc) v = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = coeffs.d(n - j);
        const long shift = dir * static_cast<long>(n - j + 1);
        const double* u = history.row_ptr(j);
        const long lo = std::max(0L, -shift);
        const long hi = std::min(ns, ns - shift);
        for (long k = 0; k < lo && k < ns; ++k) acc[static_cast<std::size_t>(k)] += w * 0.0;
        for (long k = lo; k < hi; ++k) acc[static_cast<std::size_t>(k)] += w * u[k + shift];
        for (long k = std::max(hi, 0L); k < ns; ++k) acc[static_cast<std::size_t>(k)] += w * 0.0;
    }
}

}  // namespace

double discrete_material_derivative(const SolutionHistory& history, int n, long i, OperatorSign sign,
                                    const CoefficientTable& coeffs, BoundaryReads reads)
{
    check_level(history, n, coeffs);
    const long dir = sign == OperatorSign::plus ? -1 : 1;
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += coeffs.d(n - j) * read(history, j, i + dir * static_cast<long>(n - j + 1), reads);
    const double lead = read(history, n, i + dir, reads);
    return scale(history, coeffs) * (lead - acc);
}

double combined_operator(const SolutionHistory& history, int n, long i, const SolverParams& params,
                         const CoefficientTable& coeffs, BoundaryReads reads)
{
    const double minus = discrete_material_derivative(history, n, i, OperatorSign::minus, coeffs, reads);
    const double plus = discrete_material_derivative(history, n, i, OperatorSign::plus, coeffs, reads);
    return params.p() * minus + params.q() * plus;
}

void material_derivative_row(const SolutionHistory& history, int n, OperatorSign sign,
                             const CoefficientTable& coeffs, std::span<double> out)
{
    check_level(history, n, coeffs);
    if (out.size() != history.n_space()) throw std::invalid_argument("material_derivative_row: output size");
    const long dir = sign == OperatorSign::plus ? -1 : 1;
    history_sum_row(history, n, dir, coeffs, out);
    const double c = scale(history, coeffs);
    const auto ns = static_cast<long>(history.n_space());
    const double* un = history.row_ptr(n);
    for (long k = 0; k < ns; ++k) {
        const long src = k + dir;
        const double lead = (src >= 0 && src < ns) ? un[src] : 0.0;
        out[static_cast<std::size_t>(k)] = c * (lead - out[static_cast<std::size_t>(k)]);
    }
}

void combined_operator_row(const SolutionHistory& history, int n, const SolverParams& params,
                           const CoefficientTable& coeffs, std::span<double> out)
{
    std::vector<double> plus(out.size());
    material_derivative_row(history, n, OperatorSign::minus, coeffs, out);
    material_derivative_row(history, n, OperatorSign::plus, coeffs, plus);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = params.p() * out[k] + params.q() * plus[k];
}

}  // namespace fmd
