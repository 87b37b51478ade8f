#include "fmd/core.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace fmd;
using fmd::test::rel_err;

TEST_SUITE("core")
{
    TEST_CASE("gamma_fn reference values")
    {
        CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rel_err(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-12);
        CHECK(rel_err(gamma_fn(0.5), 1.7724538509055160) < 1e-12);
        // 1.5 * 0.5 * sqrt(pi)
        CHECK(rel_err(gamma_fn(2.5), 1.3293403881791370) < 1e-12);
        CHECK(rel_err(gamma_fn(2.5), 0.75 * std::sqrt(std::numbers::pi)) < 1e-12);
    }

    TEST_CASE("gamma_fn agrees with the C library on (0, 20]")
    {
        for (double x = 1e-3; x <= 20.0; x *= 1.07) CHECK(rel_err(gamma_fn(x), std::tgamma(x)) < 1e-12);
    }

    TEST_CASE("gamma_fn satisfies the recurrence on a log-spaced sample of (0, 10]")
    {
        for (double x = 1e-4; x <= 10.0; x *= 1.13) CHECK(rel_err(gamma_fn(x + 1.0), x * gamma_fn(x)) < 1e-11);
    }

    TEST_CASE("gamma_fn rejects non-positive arguments")
    {
        CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
        CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
        CHECK_THROWS_AS(gamma_fn(std::nan("")), std::domain_error);
    }

    TEST_CASE("SolverParams validation")
    {
        CHECK_NOTHROW(SolverParams(0.5, 0.0));
        CHECK_NOTHROW(SolverParams(0.5, 1.0));
        CHECK_THROWS_AS(SolverParams(0.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(SolverParams(1.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(SolverParams(0.5, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(SolverParams(0.5, 1.1), std::invalid_argument);
        const SolverParams sp(0.25, 0.3);
        CHECK(sp.q() == doctest::Approx(0.7));
        CHECK(rel_err(sp.gamma_2ma(), std::tgamma(1.75)) < 1e-13);
        CHECK(rel_err(sp.gamma_1ma(), std::tgamma(0.75)) < 1e-13);
    }

    TEST_CASE("coefficient table examples")
    {
        const CoefficientTable c5(SolverParams(0.5, 0.5), 4);
        CHECK(c5.b(1) == 1.0);
        CHECK(std::abs(c5.b(2) - (std::sqrt(2.0) - 1.0)) < 1e-15);
        CHECK(std::abs(c5.b(2) - 0.41421356237) < 1e-11);
        const CoefficientTable c25(SolverParams(0.25, 0.5), 4);
        // 3^0.75 - 2^0.75 evaluated in extended precision
        CHECK(std::abs(c25.b(3) - 0.59771422642) < 1e-10);
        CHECK(std::abs(c25.b(3) - (std::pow(3.0, 0.75) - std::pow(2.0, 0.75))) < 1e-14);
        CHECK(c25.d(2) == c25.b(2) - c25.b(3));
    }

    TEST_CASE("coefficient invariants over an alpha sweep")
    {
        const int n = 4096;
        for (int k10 = 1; k10 <= 9; ++k10) {
            const double a = 0.1 * k10;
            const CoefficientTable c(SolverParams(a, 0.5), n);
            CHECK(c.b(1) == 1.0);
            bool decreasing = true, nonneg = true;
            double sum = 0.0, worst = 0.0;
            for (int k = 1; k <= n; ++k) {
                decreasing = decreasing && c.b(k + 1) < c.b(k);
                nonneg = nonneg && c.d(k) >= 0.0;
                sum += c.d(k);
                worst = std::max(worst, std::abs(sum - (1.0 - c.b(k + 1))));
            }
            CHECK(decreasing);
            CHECK(nonneg);
            CHECK(worst < 1e-12);
        }
    }

    TEST_CASE("l1_weight matches the direct difference for small k")
    {
        for (double a : {0.1, 0.5, 0.9})
            for (int k = 1; k < 50; ++k)
                CHECK(std::abs(l1_weight(a, k) - (std::pow(k, 1.0 - a) - std::pow(k - 1, 1.0 - a))) < 1e-14);
        CHECK_THROWS(l1_weight(0.5, 0));
    }

    TEST_CASE("stability mesh bound")
    {
        CHECK(stability_mesh_bound(SolverParams(0.5, 0.5)) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(stability_mesh_bound(SolverParams(0.25, 0.5)) == doctest::Approx(0.5625).epsilon(1e-15));
        CHECK(stability_mesh_bound(SolverParams(0.999, 0.5)) < 0.04);
        // (1 - a)^(1/(2a)) tends to zero like sqrt(1 - a) as a -> 1
        CHECK(stability_mesh_bound(SolverParams(0.99999, 0.5)) == doctest::Approx(std::pow(1e-5, 0.5 / 0.99999)).epsilon(1e-9));
        CHECK(stability_mesh_bound(SolverParams(0.99999, 0.5)) < 4e-3);
    }

    TEST_CASE("grid construction and indexing")
    {
        const double h = 0.125;
        const GridSpec g(h, 1.0, -1.5, 1.5);
        CHECK(g.n_time() == 8);
        CHECK(g.n_space() == 25);
        CHECK(g.i_min() == -12);
        CHECK(g.x_local(0) == -1.5);
        CHECK(g.global_index_of(0.0) == 0);
        CHECK(g.global_index_of(0.0625) == 0);  // right edge belongs to cell 0
        CHECK(g.global_index_of(0.0626) == 1);
        CHECK(g.global_index_of(-0.0625) == -1);
        CHECK_THROWS_AS(GridSpec(h, 1.05, -1.5, 1.5), std::invalid_argument);
        CHECK_THROWS_AS(GridSpec(h, 1.0, -1.3, 1.5), std::invalid_argument);
        CHECK_THROWS_AS(GridSpec(h, 1.0, -1.0, 1.0), std::invalid_argument);  // narrower than 2T + 2h
        CHECK_NOTHROW(GridSpec(h, 1.0, -1.0, 1.0, PaddingPolicy::none));
        CHECK_NOTHROW(GridSpec(h, 1.0, -1.125, 1.125));
    }

    TEST_CASE("solution history bookkeeping")
    {
        const GridSpec g(0.25, 1.0, -1.5, 1.5);
        std::vector<double> init(g.n_space(), 1.0);
        SolutionHistory hist(g, init);
        CHECK(hist.rows_filled() == 1);
        CHECK(hist.row(0)[3] == 1.0);
        CHECK_THROWS_AS(hist.row(1), std::out_of_range);
        std::vector<double> r(g.n_space(), 2.0);
        CHECK_THROWS_AS(hist.set_row(2, r), std::out_of_range);
        hist.set_row(1, r);
        CHECK(hist.at(1, 0) == 2.0);
        CHECK(hist.at(1, 100) == 0.0);
        CHECK(hist.at(1, -100) == 0.0);
        std::vector<double> bad(g.n_space(), 0.0);
        bad[2] = std::nan("");
        CHECK_THROWS_AS(SolutionHistory(g, bad), std::invalid_argument);
        CHECK_THROWS_AS(SolutionHistory(g, std::vector<double>(3, 0.0)), std::invalid_argument);
    }
}
