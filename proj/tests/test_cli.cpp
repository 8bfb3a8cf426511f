#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Exercises the installed command-line binary end to end: exit codes, JSON
// shape, and byte-for-byte determinism of repeated runs.

#ifndef CURVLAB_CLI_PATH
#error "CURVLAB_CLI_PATH must be defined by the build"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path tmp = fs::temp_directory_path() /
                   ("curvlab_cli_out_" + std::to_string(++counter) + ".txt");
    std::string cmd = std::string("\"") + CURVLAB_CLI_PATH + "\" " + args + " > " +
                      tmp.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
#ifdef _WIN32
    r.exit_code = rc;
#else
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#endif
    std::ifstream in(tmp);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    fs::remove(tmp);
    return r;
}

fs::path write_temp(const char* name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

const char* kHyperbolic =
    "[space]\ncoords = x y z\n[metric]\ng 1 1 = 1/z^2\ng 2 2 = 1/z^2\ng 3 3 = 1/z^2\n";

} // namespace

TEST_CASE("verdict subcommand exit codes") {
    fs::path m = write_temp("cli_hyp.metric", kHyperbolic);
    std::string base = "check " + m.string() + " --check cc --box 0.5 1.5 --points 16";
    CHECK(run_cli(base + " --lambda -1").exit_code == 0);
    CHECK(run_cli(base + " --lambda 0").exit_code == 1);
    CHECK(run_cli(base + " --estimate").exit_code == 0);
    CHECK(run_cli("check " + m.string() + " --bogus-flag").exit_code == 2);
    CHECK(run_cli("check /no/such/file.metric").exit_code == 2);
    CHECK(run_cli("").exit_code == 2); // missing subcommand
    fs::remove(m);
}

TEST_CASE("evaluation errors are distinguished from usage errors") {
    // metric referencing an unbound identifier: parses, fails at evaluation
    fs::path m = write_temp("cli_bad.metric",
                            "[space]\ncoords = x y z\n[metric]\ng 1 1 = q\ng 2 2 = 1\ng 3 "
                            "3 = 1\n");
    CHECK(run_cli("check " + m.string() + " --check flat --points 4").exit_code == 3);
    fs::remove(m);
    // malformed metric file: parse error
    fs::path b = write_temp("cli_malformed.metric", "[space]\ncoords = x y\n");
    CHECK(run_cli("check " + b.string()).exit_code == 2);
    fs::remove(b);
}

TEST_CASE("json output is well-formed and byte-stable across runs") {
    fs::path m = write_temp("cli_hyp2.metric", kHyperbolic);
    std::string cmd = "check " + m.string() +
                      " --check cc --lambda -1 --box 0.5 1.5 --points 16 --json";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"check\": \"constant_curvature\"") != std::string::npos);
    CHECK(a.out.find("\"verdict\": \"pass\"") != std::string::npos);
    CHECK(a.out.find("\"lambda\": -1") != std::string::npos);
    fs::remove(m);
}

TEST_CASE("residual subcommand reads fields from the file") {
    fs::path f = write_temp("cli_kdv.metric",
                            "[space]\ncoords = x y z\n[metric]\ng 1 1 = 1\ng 2 2 = 1\ng 3 "
                            "3 = 1\n[fields]\nl = -4*cosh(x-4*z)^(-2)\n");
    RunResult ok = run_cli("residual " + f.string() +
                           " --system kdv --box -1 1 --points 16");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("residual:kdv") != std::string::npos);
    // a non-solution fails with exit 1
    fs::path g = write_temp("cli_kdv_bad.metric",
                            "[space]\ncoords = x y z\n[metric]\ng 1 1 = 1\ng 2 2 = 1\ng 3 "
                            "3 = 1\n[fields]\nl = x^2\n");
    CHECK(run_cli("residual " + g.string() + " --system kdv --box -1 1 --points 16")
              .exit_code == 1);
    CHECK(run_cli("residual " + f.string() + " --system nope").exit_code == 3);
    fs::remove(f);
    fs::remove(g);
}

TEST_CASE("density and extension subcommands") {
    fs::path m = write_temp("cli_hyp3.metric", kHyperbolic);
    CHECK(run_cli("cs " + m.string() + " --expect-zero --box 0.5 1.5 --points 8")
              .exit_code == 0);
    RunResult sym = run_cli("extend " + m.string() +
                            " --check symmetric --points 2 --box 0.5 1.5 0.5 1.5 0.5 1.5 "
                            "-1 1 -1 1 -1 1");
    CHECK(sym.exit_code == 1); // the doubled space is not parallel-curvature
    fs::path flat = write_temp("cli_flat.metric",
                               "[space]\ncoords = x y z\n[metric]\ng 1 1 = 1\ng 2 2 = "
                               "1\ng 3 3 = 1\n");
    CHECK(run_cli("extend " + flat.string() + " --check flat --points 2").exit_code == 0);
    RunResult minus =
        run_cli("extend " + m.string() + " --mode mod- --check bundle --points 2");
    CHECK(minus.exit_code == 0);
    CHECK(minus.out.find("connection_bundle:mod-") != std::string::npos);
    fs::remove(m);
    fs::remove(flat);
}

TEST_CASE("one-form eigenvalue subcommand") {
    fs::path m = write_temp("cli_lap.metric",
                            "[space]\ncoords = x y z\n[metric]\ng 1 1 = 1\ng 2 2 = 1\ng 3 "
                            "3 = 1\n[fields]\nw 1 = sin(x)\nw 2 = 0\nw 3 = 0\n");
    CHECK(run_cli("laplace1 " + m.string() + " --lambda 1 --points 8").exit_code == 0);
    CHECK(run_cli("laplace1 " + m.string() + " --lambda 2 --points 8").exit_code == 1);
    fs::remove(m);
}

TEST_CASE("registry subcommands") {
    RunResult list = run_cli("corpus list");
    CHECK(list.exit_code == 0);
    CHECK(list.out.find("hyperbolic_lm1") != std::string::npos);
    CHECK(list.out.find("sec4_lambda_quarter") != std::string::npos);

    RunResult one = run_cli("corpus run sphere_l1 --json");
    CHECK(one.exit_code == 0);
    CHECK(one.out.find("\"case\": \"sphere_l1\"") != std::string::npos);
    CHECK(one.out.find("\"ok\": true") != std::string::npos);
    CHECK(one.out.find("\"matched\": true") != std::string::npos);

    fs::path dir = fs::temp_directory_path() / "curvlab_cli_emit";
    RunResult emit = run_cli("corpus emit " + dir.string());
    CHECK(emit.exit_code == 0);
    CHECK(fs::exists(dir / "hyperbolic_lm1.metric"));
    // emitted files parse back through the check pipeline
    CHECK(run_cli("check " + (dir / "hyperbolic_lm1.metric").string() +
                  " --check cc --lambda -1 --box 0.5 1.5 --points 8")
              .exit_code == 0);
    fs::remove_all(dir);
}
