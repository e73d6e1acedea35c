#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int status = -1;
    std::string out;
};

// stdout and stderr of the CLI, merged
Result run(const std::string& args)
{
    const std::string cmd = std::string(GASP_CLI_PATH) + " " + args + " 2>&1";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, n);
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string value_of(const std::string& csv, const std::string& key)
{
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + ",", 0) == 0) {
            return line.substr(key.size() + 1);
        }
    }
    return {};
}

std::filesystem::path scratch(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("gasp_cli_" + name);
}

} // namespace

TEST(Cli, KernelEval)
{
    const Result r = run("kernel-eval --alpha 0.25 --x 1,0,0 --xi 1,1,0");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(r.out.rfind("quantity,value\n", 0), 0u);
    EXPECT_EQ(std::stod(value_of(r.out, "zeta")), -4.0);
    EXPECT_NEAR(std::stod(value_of(r.out, "q1")), 0.090537594101475985598, 1e-15);
    EXPECT_NEAR(std::stod(value_of(r.out, "q2")), 0.055955310414354155451, 1e-15);
    EXPECT_EQ(value_of(r.out, "bound_ok"), "1");
}

TEST(Cli, InvalidInputExitsWithTwo)
{
    Result r = run("kernel-eval --x 1,0,0 --xi 1,0,0");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("coincident points"), std::string::npos) << r.out;

    EXPECT_EQ(run("gauge --alpha 0.5").status, 2);
    EXPECT_EQ(run("kernel-eval --x -1,0,0 --xi 1,0,0").status, 2);
    EXPECT_EQ(run("gauge --ntheta 2").status, 2);
    EXPECT_EQ(run("nonsense").status, 2);
    EXPECT_EQ(run("solve --case nope --ntheta 8 --nphi 16").status, 2);
    EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, Gauge)
{
    const Result r = run("gauge --ntheta 16 --nphi 32 --tol 5e-3");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(r.out.rfind("x1,x2,x3,location_class,value,expected,abs_error\n", 0), 0u);
    for (const char* cls : {",interior,", ",exterior,", ",base,", ",rim,"}) {
        EXPECT_NE(r.out.find(cls), std::string::npos) << cls;
    }
    // the default tolerance is not met on this coarse mesh
    EXPECT_EQ(run("gauge --ntheta 16 --nphi 32").status, 1);
}

TEST(Cli, EmptyTargets)
{
    const auto path = scratch("empty.csv");
    std::ofstream(path) << "x1,x2,x3\n";
    const Result r = run("solve --case x2 --ntheta 8 --nphi 16 --targets " + path.string());
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(r.out, "x1,x2,x3,u_bem,u_hemisphere,abs_diff\n");
    std::filesystem::remove(path);
}

TEST(Cli, SolveFromCaseAndFromFiles)
{
    const auto prefix = scratch("data");
    const Result a = run("solve --case 'x1^(1-2a)' --alpha 0.3 --ntheta 16 --nphi 32 --write-data " + prefix.string());
    ASSERT_EQ(a.status, 0) << a.out;
    const std::string gamma = prefix.string() + "_gamma.csv", base = prefix.string() + "_base.csv";
    const Result b = run("solve --alpha 0.3 --ntheta 16 --nphi 32 --phi-file " + gamma + " --nu-file " + base);
    ASSERT_EQ(b.status, 0) << b.out;

    std::istringstream la(a.out), lb(b.out);
    std::string ra, rb;
    std::getline(la, ra);
    std::getline(lb, rb);
    int rows = 0;
    while (std::getline(la, ra) && std::getline(lb, rb)) {
        double va[6], vb[6];
        std::replace(ra.begin(), ra.end(), ',', ' ');
        std::replace(rb.begin(), rb.end(), ',', ' ');
        std::istringstream sa(ra), sb(rb);
        for (int i = 0; i < 6; ++i) {
            sa >> va[i];
            sb >> vb[i];
        }
        const double exact = std::pow(va[0], 0.4);
        EXPECT_NEAR(va[3], exact, 1e-2);
        EXPECT_NEAR(va[4], exact, 1e-2);
        // sampled ν has no singularity subtraction at the foot of the target
        EXPECT_NEAR(vb[3], va[3], 2e-3);
        ++rows;
    }
    EXPECT_EQ(rows, 20);

    // a data file that does not match the mesh
    EXPECT_EQ(run("solve --alpha 0.3 --ntheta 8 --nphi 16 --phi-file " + gamma + " --nu-file " + base).status, 2);
    std::filesystem::remove(gamma);
    std::filesystem::remove(base);
}

TEST(Cli, ConfigFileAndFlagPrecedence)
{
    const auto path = scratch("run.cfg");
    std::ofstream(path) << "# coarse run\nalpha = 0.1\nntheta = 8\nnphi = 16\n";
    const Result r = run("kernel-eval --config " + path.string() + " --x 1,0,0 --xi 1,1,0");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(std::stod(value_of(r.out, "alpha")), 0.1);
    const Result over = run("kernel-eval --config " + path.string() + " --alpha 0.3 --x 1,0,0 --xi 1,1,0");
    EXPECT_EQ(std::stod(value_of(over.out, "alpha")), 0.3);

    std::ofstream(path) << "alpha = 0.1\ncolour = red\n";
    const Result bad = run("gauge --config " + path.string());
    EXPECT_EQ(bad.status, 2);
    EXPECT_NE(bad.out.find("colour"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, OutputFile)
{
    const auto path = scratch("flux.csv");
    const Result r = run("flux --ntheta 16 --nphi 32 --tol 1e-2 --out " + path.string());
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "pole_x1,pole_x2,pole_x3,location_class,flux,expected,abs_error");
    std::filesystem::remove(path);
}

TEST(Cli, ThreadCountDoesNotChangeResults)
{
    const std::string args = "green-check --alpha 0.45 --ntheta 8 --nphi 16 --tol 1";
    const Result one = run(args + " --threads 1");
    const Result four = run(args + " --threads 4");
    ASSERT_EQ(one.status, 0) << one.out;
    EXPECT_EQ(one.out, four.out);
    const std::string solve = "solve --case x2x3 --ntheta 8 --nphi 16 --tol 1";
    EXPECT_EQ(run(solve + " --threads 1").out, run(solve + " --threads 4").out);
}

TEST(Cli, ConvergenceSummary)
{
    const Result r = run("convergence --alpha 0.25 --case x2 --case 'x1^(1-2a)'");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("summary,,monotone_decrease,1\n"), std::string::npos) << r.out;
    EXPECT_EQ(run("convergence --ntheta 16 --nphi 32").status, 2);
}

TEST(Cli, EnergyCheck)
{
    const Result r = run("energy-check --alpha 0.1 --ntheta 16 --nphi 32 --tol 1e-3");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(r.out.rfind("case_name,lhs,rhs,rhs_base,rhs_surface,rel_error\n", 0), 0u);
}
