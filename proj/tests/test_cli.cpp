#include "fmd/config.hpp"
#include "fmd/experiments.hpp"
#include "fmd/sources.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace fmd;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir()
{
    const fs::path d = fs::temp_directory_path() / "fmd_cli_tests";
    fs::create_directories(d);
    return d;
}

std::string file_text(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig small_walk(const std::string& out)
{
    RunConfig c;
    c.h = 1.0 / 32;
    c.T = 0.5;
    c.output = out;
    return c;
}

int run_binary(const std::string& args)
{
    const std::string cmd = std::string(FMD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("config round trip")
    {
        RunConfig c;
        c.alpha = 0.3;
        c.p = 0.05;
        c.h = std::ldexp(1.0, -9);
        c.T = 2.0;
        c.x_min = -3.0;
        c.x_max = 3.5;
        c.padding = PaddingPolicy::none;
        c.variant = SchemeVariant::standard;
        c.source_kind = SourceKind::monomial;
        c.mu = 2.0;
        c.delta = {3, false};
        c.initial = InitialKind::zero;
        c.output = "a b.csv";
        c.output_sparse = "s.csv";
        c.times = {0.5, 1.0};
        c.store_every = 4;
        c.norms = {NormKind::linf};
        c.sweep_h = {0.25, 0.125, 0.0625};
        c.sweep_alpha = {0.25, 0.75};
        c.kernel_t = 0.7;
        c.kernel_x_max = 3.0;
        c.kernel_nx = 11;
        c.kernel_window = 10.0;
        std::istringstream in(serialize(c));
        CHECK(parse_config(in) == c);
        std::istringstream def(serialize(RunConfig{}));
        CHECK(parse_config(def) == RunConfig{});
    }

    TEST_CASE("parsing")
    {
        std::istringstream in("# comment\nalpha = 0.25   # trailing\n\nh = 2^-9\nsource.kind = jump_first\n");
        const auto c = parse_config(in);
        CHECK(c.alpha == 0.25);
        CHECK(c.h == std::ldexp(1.0, -9));
        CHECK(c.source_kind == SourceKind::jump_first);
        CHECK(parse_real("h", "2^3") == 8.0);
        CHECK(parse_real("h", "0.125") == 0.125);
        CHECK_THROWS_AS(parse_real("h", "0.1x"), ConfigError);

        RunConfig r;
        try {
            set_key(r, "alpah", "0.5");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.key() == "alpah");
        }
        try {
            apply_override(r, "variant=implicit");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.key() == "variant");
        }
        CHECK_THROWS_AS(apply_override(r, "novalue"), ConfigError);
        apply_override(r, "p=0.75");
        CHECK(r.p == 0.75);
    }

    TEST_CASE("mesh errors name the key")
    {
        RunConfig c;
        c.h = 0.3;
        c.T = 1.0;
        try {
            make_solve_config(c);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.key() == "T");
            CHECK(std::string(e.what()).find("mesh multiple") != std::string::npos);
        }
        c = RunConfig{};
        c.x_min = -0.1;
        c.x_max = 2.0;
        c.h = 0.25;
        try {
            make_solve_config(c);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.key() == "x_min");
        }
        c = RunConfig{};
        c.alpha = 1.0;
        CHECK_THROWS_AS(make_solve_config(c), ConfigError);
        std::ostringstream out, err;
        CHECK(cmd_solve(c, out, err) == exit_config);
        CHECK(err.str().find("alpha") != std::string::npos);
    }

    TEST_CASE("default domains")
    {
        RunConfig c;
        c.T = 1.0;
        c.source_kind = SourceKind::monomial;
        CHECK(domain_for(c, 0.25) == std::pair{-2.0, 2.0});
        c.source_kind = SourceKind::jump_first;
        CHECK(domain_for(c, 0.25) == std::pair{-3.0, 3.0});
        c.source_kind = SourceKind::wait_first;
        const auto [lo, hi] = domain_for(c, 0.25);
        CHECK(lo <= -1.25);
        CHECK(hi >= 1.25);
        const auto sc = make_solve_config(c, 0.5, 1.0 / 64);
        CHECK(sc.track_mass);
        CHECK(sc.initial[sc.grid.local(0)] > 0.0);
    }

    TEST_CASE("solve writes a snapshot and a sparse file")
    {
        const auto dir = scratch_dir();
        auto c = small_walk((dir / "snap.csv").string());
        c.output_sparse = (dir / "snap_sparse.csv").string();
        c.times = {0.25, 0.5};
        std::ostringstream out, err;
        REQUIRE(cmd_solve(c, out, err) == exit_ok);
        const auto text = file_text(c.output);
        CHECK(text.starts_with("#alpha=0.5\n"));
        CHECK(text.find("x,t=0.25,t=0.5\n") != std::string::npos);
        const auto sc = make_solve_config(c);
        std::istringstream lines(text);
        std::string line;
        std::size_t rows = 0;
        bool header = false;
        while (std::getline(lines, line)) {
            if (line.starts_with("#")) continue;
            if (!header) {
                header = true;
                continue;
            }
            ++rows;
        }
        CHECK(rows == sc.grid.n_space());
        const auto samples = SampledSource::read_csv_file(c.output_sparse, sc.grid);
        CHECK(samples.size() > 0);
        CHECK(samples.get(8, 0) > 0.0);
        CHECK(err.str().empty());
    }

    TEST_CASE("pdf-compare, mass and kernel on small runs")
    {
        const auto dir = scratch_dir();
        std::ostringstream out, err;
        auto c = small_walk((dir / "pdf.csv").string());
        REQUIRE(cmd_pdf_compare(c, out, err) == exit_ok);
        CHECK(out.str().find("l1 error = ") != std::string::npos);
        CHECK(file_text(c.output).find("x,numeric,analytic\n") != std::string::npos);

        c.output = (dir / "mass.csv").string();
        REQUIRE(cmd_mass(c, out, err) == exit_ok);
        CHECK(file_text(c.output).starts_with("t,m_standard,m_advanced\n"));
        CHECK(out.str().find("max |rho| = ") != std::string::npos);

        c.output = (dir / "kernel.csv").string();
        c.kernel_nx = 5;
        c.kernel_t = 0.5;
        c.kernel_x_max = 1.0;
        REQUIRE(cmd_kernel(c, out, err) == exit_ok);
        CHECK(file_text(c.output).find("x,G\n") != std::string::npos);
        CHECK(out.str().find("kernel mass = ") != std::string::npos);
    }

    TEST_CASE("convergence on a small sweep")
    {
        const auto dir = scratch_dir();
        RunConfig c;
        c.source_kind = SourceKind::monomial;
        c.variant = SchemeVariant::standard;
        c.T = 0.5;
        c.sweep_h = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
        c.norms = {NormKind::linf};
        c.output = (dir / "conv.csv").string();
        std::ostringstream out, err;
        REQUIRE(cmd_convergence(c, out, err) == exit_ok);
        const auto text = file_text(c.output);
        CHECK(text.starts_with("alpha,h,norm_kind,error,slope\n"));
        CHECK(out.str().find("slope = ") != std::string::npos);
        const auto res = convergence_sweep(c);
        REQUIRE(res.size() == 1);
        CHECK(res[0].fit.slope == doctest::Approx(1.5).epsilon(0.15));
    }

    TEST_CASE("failure exit codes")
    {
        const auto dir = scratch_dir();
        std::ostringstream out, err;
        RunConfig c;
        c.output = (dir / "fail.csv").string();
        c.source_kind = SourceKind::monomial;
        CHECK(cmd_pdf_compare(c, out, err) == exit_config);

        c = RunConfig{};
        c.output = (dir / "fail.csv").string();
        c.alpha = 1.0;
        CHECK(cmd_kernel(c, out, err) == exit_config);

        c = RunConfig{};
        c.output = (dir / "fail.csv").string();
        c.sweep_h = {0.25, 0.125};
        CHECK(cmd_convergence(c, out, err) == exit_config);

        c = RunConfig{};
        c.output = (dir / "fail.csv").string();
        c.h = 1.0;
        c.T = 2.0;
        c.source_kind = SourceKind::monomial;
        c.mu = 2000.0;
        c.x_min = -6.0;
        c.x_max = 6.0;
        std::ostringstream err2;
        CHECK(cmd_solve(c, out, err2) == exit_numerical);
        CHECK(err2.str().find("exceeds the stability bound") != std::string::npos);
        CHECK(err2.str().find("numerical failure") != std::string::npos);

        CHECK(run_command("frobnicate", c, out, err) == exit_config);
    }

    TEST_CASE("binary exit codes")
    {
        const auto dir = scratch_dir();
        const auto cfg = dir / "bin.cfg";
        {
            std::ofstream f(cfg);
            f << "h = 2^-5\nT = 0.5\noutput = " << (dir / "bin.csv").string() << "\n";
        }
        CHECK(run_binary("solve --config " + cfg.string()) == 0);
        CHECK(run_binary("solve --config " + cfg.string() + " --override T=0.3") == 1);
        CHECK(run_binary("solve --config " + cfg.string() + " --override bogus=1") == 1);
        CHECK(run_binary("solve --config " + (dir / "missing.cfg").string()) == 1);
        CHECK(run_binary("solve --config " + cfg.string() +
                         " --override h=1 --override T=2 --override source.kind=monomial"
                         " --override source.mu=2000 --override x_min=-6 --override x_max=6") == 2);
        CHECK(run_binary("kernel --config " + cfg.string() + " --override alpha=1") == 1);
        CHECK(run_binary("solve") != 0);
    }
}
