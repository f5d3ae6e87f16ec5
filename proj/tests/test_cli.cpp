#include <doctest.h>

#include "run_config.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace hypzero::cli;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(HYPZERO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args) {
    const fs::path tmp = fs::temp_directory_path() / "hypzero_cli_capture.txt";
    const std::string cmd = std::string(HYPZERO_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>/dev/null";
    (void)std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("complex literal parsing") {
    auto check = [](const char* text, mpq_class re, mpq_class im) {
        const RationalComplex z = parse_complex(text);
        CHECK(z.re == re);
        CHECK(z.im == im);
    };
    check("4/3", mpq_class(4, 3), 0);
    check("1/3+2/3i", mpq_class(1, 3), mpq_class(2, 3));
    check("-1+0.5i", -1, mpq_class(1, 2));
    check("2i", 0, 2);
    check("i", 0, 1);
    check("-i", 0, -1);
    check("1-i", 1, -1);
    check("1.5e-1 - 2/4 i", mpq_class(3, 20), mpq_class(-1, 2));
    check("1e+2", 100, 0);
    CHECK_THROWS_AS(parse_complex(""), UsageError);
    CHECK_THROWS_AS(parse_complex("1/0"), UsageError);
    CHECK_THROWS_AS(parse_complex("abc"), UsageError);
    CHECK_THROWS_AS(parse_complex("1+2"), UsageError);
}

TEST_CASE("degree lists") {
    CHECK(parse_n_range("2..5") == std::vector<int>{2, 3, 4, 5});
    CHECK(parse_n_list("5,10,16") == std::vector<int>{5, 10, 16});
    CHECK_THROWS_AS(parse_n_range("5..2"), UsageError);
    CHECK_THROWS_AS(parse_n_range("0..2"), UsageError);
    CHECK_THROWS_AS(parse_n_list("5,,6"), UsageError);
}

TEST_CASE("config round trip and content hash") {
    RunConfig c;
    c.command = "verify";
    c.n_list = {2, 3, 4};
    c.path_tol = 1e-25;
    c.z = "1/3+2/3i";
    RunConfig back;
    back.apply(c.serialize());
    CHECK(back == c);

    RunConfig moved = c;
    moved.out = "elsewhere";
    moved.workers = 7;
    CHECK(moved.content_hash() == c.content_hash());
    RunConfig changed = c;
    changed.precision_bits = 256;
    CHECK(changed.content_hash() != c.content_hash());
    CHECK(c.run_directory() == fs::path("out") / ("verify-" + c.content_hash()));

    RunConfig bad;
    CHECK_THROWS_AS(bad.apply("unknown = 1\n"), UsageError);
    CHECK_THROWS_AS(bad.apply("steps 5\n"), UsageError);
    CHECK_NOTHROW(bad.apply("# comment\n\nsteps = 64  # trailing\n"));
    CHECK(bad.steps == 64);
}

TEST_CASE("exit codes") {
    CHECK(run("coeffs --n 2") == 0);
    CHECK(run("coeffs --n 0") == 2);
    CHECK(run("coeffs") == 2);
    CHECK(run("bogus") == 2);
    CHECK(run("roots --n 1") == 0);
    CHECK(run("roots --n 80 --precision-bits 64 --out " + (fs::temp_directory_path() / "hz").string()) == 0);
    CHECK(run("trace --z 1") == 2);
    CHECK(run("trace --z 2 --path-tol 0.3 --out " + (fs::temp_directory_path() / "hz").string()) == 5);
    CHECK(run("--help") == 0);
}

TEST_CASE("coefficient and root output") {
    CHECK(capture("coeffs --n 2") == "n,m,numerator,denominator\n2,0,1,1\n2,1,-6,5\n2,2,3,7\n");
    CHECK(capture("coeffs --n 1") == "n,m,numerator,denominator\n1,0,1,1\n1,1,-1,2\n");
    const std::string roots = capture("roots --n 2");
    CHECK(roots.find("2,0,1.39999999999999999999999999999999999999") != std::string::npos);
    CHECK(roots.find(",6.110100926607786675") != std::string::npos);
    CHECK(roots.find(",-6.110100926607786675") != std::string::npos);
}

TEST_CASE("trace writes a path ending at 1/sqrt z") {
    const fs::path base = fs::temp_directory_path() / "hz_trace";
    fs::remove_all(base);
    const std::string out = capture("trace --z 4/3 --steps 512 --out " + base.string());
    CHECK(out.find("PASS endpoint") != std::string::npos);
    fs::path dir;
    for (const auto& e : fs::directory_iterator(base)) dir = e.path();
    std::ifstream csv(dir / "path.csv");
    std::string line, last;
    while (std::getline(csv, line)) last = line;
    CHECK(last.find("0.00000000000000000000000000000e+00,8.66025403784438646763723170") == 0);

    // The saved config reproduces the same directory.
    CHECK(run("trace --config " + (dir / "config.txt").string()) == 0);
    std::size_t dirs = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(base)) ++dirs;
    CHECK(dirs == 1);
}
