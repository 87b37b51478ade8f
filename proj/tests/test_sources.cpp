#include "fmd/scheme.hpp"
#include "fmd/sources.hpp"
#include "helpers.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace fmd;

namespace {

double discrete_mass(const std::vector<double>& v, double h)
{
    double s = 0.0;
    for (double x : v) s += x;
    return h * s;
}

// Cell average of the jump-first source by direct quadrature of the density
// alpha / Gamma(1-alpha) |x|^{-alpha-1} on the active part of the cell.
double jump_first_quadrature(double a, double p, double x0, double x1, double t)
{
    auto f = [&](double x) {
        if (x > t) return (1.0 - p) * a * std::pow(x, -a - 1.0) / std::tgamma(1.0 - a);
        if (x < -t) return p * a * std::pow(-x, -a - 1.0) / std::tgamma(1.0 - a);
        return 0.0;
    };
    double lo = x0, hi = x1, acc = 0.0;
    for (double cut : {-t, t}) {
        if (cut > lo && cut < hi) {
            acc += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, cut, 15, 1e-13);
            lo = cut;
        }
    }
    acc += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-13);
    return acc / (x1 - x0);
}

}  // namespace

TEST_SUITE("sources")
{
    TEST_CASE("delta on a node, K = 2")
    {
        const double h = 0.125;
        const GridSpec g(h, 1.0, -1.5, 1.5);
        for (bool rescale : {false, true}) {
            const auto d = discretize_delta(0.0, {2, rescale}, g);
            int nonzero = 0;
            for (double v : d) nonzero += v > 0.0;
            // the cosine vanishes at +-K h, leaving three cells
            CHECK(nonzero == 3);
            CHECK(d[g.local(0)] == doctest::Approx(1.0 / (2.0 * h)).epsilon(1e-14));
            CHECK(d[g.local(1)] == doctest::Approx(1.0 / (4.0 * h)).epsilon(1e-14));
            CHECK(discrete_mass(d, h) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }

    TEST_CASE("delta with K = 1 collapses to one cell")
    {
        const double h = 0.125;
        const GridSpec g(h, 1.0, -1.5, 1.5);
        const auto d = discretize_delta(0.25, {1, true}, g);
        CHECK(d[g.local(2)] == doctest::Approx(1.0 / h).epsilon(1e-14));
        CHECK(discrete_mass(d, h) == doctest::Approx(1.0).epsilon(1e-14));
        int nonzero = 0;
        for (double v : d) nonzero += v > 1e-300;
        CHECK(nonzero == 1);
    }

    TEST_CASE("off-node delta keeps unit mass")
    {
        const double h = 0.125;
        const GridSpec g(h, 1.0, -1.5, 1.5);
        for (double c : {0.03, 0.3 * h, -0.41})
            for (int K : {2, 3, 5}) {
                const auto d = discretize_delta(c, {K, true}, g);
                CHECK(discrete_mass(d, h) == doctest::Approx(1.0).epsilon(1e-14));
                // the 2K nodes under the stencil sample a full cosine period,
                // whose discrete sum vanishes, so the raw formula is already normalised
                const auto raw = discretize_delta(c, {K, false}, g);
                CHECK(discrete_mass(raw, h) == doctest::Approx(1.0).epsilon(1e-14));
            }
        CHECK_THROWS_AS(discretize_delta(1.6, {}, g), std::invalid_argument);
        CHECK_THROWS_AS(discretize_delta(0.0, {0, true}, g), std::invalid_argument);
    }

    TEST_CASE("wait-first source mass")
    {
        const SolverParams sp(0.5, 0.5);
        const double h = 1.0 / 64;
        const GridSpec g(h, 1.0, -1.5, 1.5);
        const auto f = source_values(SourceTerm::wait_first(sp), 64, g);
        CHECK(discrete_mass(f, h) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-13));
        CHECK(discrete_mass(f, h) == doctest::Approx(0.564190).epsilon(1e-6));
        CHECK(std::abs(validate_source_mass(SourceTerm::wait_first(sp), 64, g)) < 1e-14);
        CHECK_THROWS_AS(source_values(SourceTerm::wait_first(sp), 0, g), std::invalid_argument);
        CHECK_THROWS_AS(source_values(SourceTerm::jump_first(sp), 0, g), std::invalid_argument);
        CHECK_THROWS_AS(source_values(SourceTerm::standard_walk(sp), 0, g), std::invalid_argument);
    }

    TEST_CASE("monomial source")
    {
        const SolverParams sp(0.5, 0.5);
        const GridSpec g(0.125, 1.0, -2.0, 2.0);
        const auto term = SourceTerm::monomial(sp, 1.0);
        for (double v : source_values(term, 4, g)) CHECK(v == 0.5);
        const double rho = validate_source_mass(term, 4, g);
        const double width = static_cast<double>(g.n_space()) * g.h();
        CHECK(rho == doctest::Approx(0.5 * width - std::pow(0.5, -0.5) / std::tgamma(0.5)));
        for (double v : source_values(SourceTerm::monomial(sp, 0.0), 0, g)) CHECK(v == 1.0);
        CHECK_THROWS(SourceTerm::monomial(sp, -1.0));
    }

    TEST_CASE("jump-first cell averages match quadrature on random cells")
    {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> pos(-4.0, 4.0), wid(1e-3, 0.3), tt(0.1, 2.0), pp(0.0, 1.0),
            aa(0.1, 0.9);
        for (int k = 0; k < 20; ++k) {
            const double a = aa(rng), p = pp(rng), t = tt(rng);
            const double x0 = pos(rng), x1 = x0 + wid(rng);
            const double got = jump_first_cell_average(SolverParams(a, p), x0, x1, t);
            const double want = jump_first_quadrature(a, p, x0, x1, t);
            CHECK(std::abs(got - want) <= 1e-8 * std::max(std::abs(want), 1e-12));
        }
    }

    TEST_CASE("jump-first mass equals the analytic mass inside the mesh")
    {
        // the whole-line mass is 1/sqrt(pi) at alpha = 1/2, p = 1/2, t = 1; the
        // mesh keeps everything except the tails beyond its outer cell faces
        const SolverParams sp(0.5, 0.5);
        for (int e : {4, 6, 8}) {
            const double h = std::ldexp(1.0, -e);
            const GridSpec g(h, 1.0, -64.0, 64.0);
            const int n = g.n_time();
            const auto f = source_values(SourceTerm::jump_first(sp), n, g);
            const double edge = 64.0 + 0.5 * h;
            const double tail = std::pow(edge, -0.5) / std::tgamma(0.5);
            CHECK(discrete_mass(f, h) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi) - tail).epsilon(1e-12));
            CHECK(validate_source_mass(SourceTerm::jump_first(sp), n, g) == doctest::Approx(-tail).epsilon(1e-9));
        }
    }

    TEST_CASE("standard walk source and clipping")
    {
        const SolverParams sp(0.5, 0.3);
        const double h = 1.0 / 32;
        const GridSpec wide(h, 1.0, -1.25, 1.25);
        const auto term = SourceTerm::standard_walk(sp);
        for (int n = 1; n <= wide.n_time(); ++n) CHECK(std::abs(validate_source_mass(term, n, wide)) < 1e-13);
        const auto f = source_values(term, 16, wide);
        // deltas at -t (weight p) and +t (weight 1 - p)
        const double amp = std::pow(0.5, -0.5) / std::tgamma(0.5);
        CHECK(f[wide.local(-16)] == doctest::Approx(amp * 0.3 / (2.0 * h)));
        CHECK(f[wide.local(16)] == doctest::Approx(amp * 0.7 / (2.0 * h)));
        // a domain narrower than 2T loses the outgoing deltas
        const GridSpec narrow(h, 1.0, -0.75, 0.75, PaddingPolicy::none);
        CHECK(std::abs(validate_source_mass(term, 8, narrow)) < 1e-13);
        const double lost = validate_source_mass(term, 24, narrow);
        CHECK(lost < -0.1);
        // centred on the last node, the stencil keeps 1/(2h) + 1/(4h) of the 1/h total
        CHECK(lost == doctest::Approx(-0.25 * std::pow(0.75, -0.5) / std::tgamma(0.5)).epsilon(1e-12));
    }

    TEST_CASE("all walk sources are non-negative")
    {
        const GridSpec g(1.0 / 32, 1.0, -3.0, 3.0);
        for (double p : {0.0, 0.05, 0.5, 1.0}) {
            const SolverParams sp(0.6, p);
            for (const auto& term : {SourceTerm::wait_first(sp), SourceTerm::jump_first(sp),
                                     SourceTerm::standard_walk(sp)})
                for (int n = 1; n <= g.n_time() + 1; ++n)
                    for (double v : source_values(term, n, g)) CHECK(v >= 0.0);
        }
    }

    TEST_CASE("sampled source CSV")
    {
        const SolverParams sp(0.5, 0.5);
        const GridSpec g(0.25, 1.0, -1.5, 1.5);
        std::istringstream in("# comment\nn,i,value\n1,0,2.5\n2,-3,1e-3\n\n3,6,4\n");
        const auto s = SampledSource::read_csv(in, g);
        CHECK(s.size() == 3);
        const auto term = SourceTerm::sampled(sp, s);
        const auto f1 = source_values(term, 1, g);
        CHECK(f1[g.local(0)] == 2.5);
        CHECK(f1[g.local(1)] == 0.0);
        CHECK(source_values(term, 2, g)[g.local(-3)] == 1e-3);
        CHECK(source_values(term, 4, g)[g.local(6)] == 0.0);

        std::istringstream off_mesh("1,7,1.0\n");
        CHECK_THROWS(SampledSource::read_csv(off_mesh, g));
        std::istringstream late("6,0,1.0\n");
        CHECK_THROWS(SampledSource::read_csv(late, g));
        std::istringstream junk("n,i,value\n1,x,1.0\n");
        CHECK_THROWS(SampledSource::read_csv(junk, g));
        std::istringstream short_line("1,2\n");
        CHECK_THROWS(SampledSource::read_csv(short_line, g));
    }

    TEST_CASE("solver sparse output is readable as a sampled source")
    {
        const SolverParams sp(0.5, 0.5);
        const GridSpec g(0.125, 0.5, -1.0, 1.0);
        SolveConfig cfg{sp, g, SourceTerm::wait_first(sp), delta_initial(g), SchemeVariant::advanced_source};
        const auto hist = solve(cfg);
        std::stringstream csv;
        write_sparse_csv(csv, hist, {0, 2, 4});
        const auto s = SampledSource::read_csv(csv, g);
        for (int n : {0, 2, 4})
            for (std::size_t k = 0; k < g.n_space(); ++k)
                CHECK(s.get(n, g.i_min() + static_cast<long>(k)) == hist.row(n)[k]);
    }
}
