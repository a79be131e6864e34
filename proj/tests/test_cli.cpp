#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <variant>

#include "gapamp/cli.hpp"
#include "gapamp/instances.hpp"

using namespace gapamp;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream stream(text);
    std::string current;
    while (std::getline(stream, current))
        if (current == line)
            return true;
    return false;
}

std::string write_temp(const std::string& name, const std::string& payload) {
    std::string path = "cli_test_" + name;
    std::ofstream(path, std::ios::binary) << payload;
    return path;
}

} // namespace

TEST_CASE("gen emits parseable canonical instances") {
    for (std::string name : {"no-edge", "yes-chain", "dmc-no", "dmc-yes", "random"}) {
        CliRun r = run({"gen", name});
        CHECK(r.code == 0);
        ParsedInstance parsed = parse_instance(r.out);  // throws on failure
        (void)parsed;
    }
}

TEST_CASE("identical argv and seed give byte-identical output") {
    CliRun a = run({"gen", "random", "--seed", "9", "--n", "7"});
    CliRun b = run({"gen", "random", "--seed", "9", "--n", "7"});
    CHECK(a.out == b.out);
    CliRun c = run({"gen", "random", "--seed", "10", "--n", "7"});
    CHECK(a.out != c.out);

    CliRun amp1 = run({"amplify-so", write_temp("ne.txt", run({"gen", "no-edge"}).out),
                       "--q", "2", "--layers", "2", "--copies", "3", "--seed", "4"});
    CliRun amp2 = run({"amplify-so", "cli_test_ne.txt", "--q", "2", "--layers", "2",
                       "--copies", "3", "--seed", "4"});
    CHECK(amp1.code == 0);
    CHECK(amp1.out == amp2.out);
}

TEST_CASE("solve-so reports the documented numbers for the no-edge gadget") {
    std::string path = write_temp("noedge.txt", run({"gen", "no-edge"}).out);
    CliRun r = run({"solve-so", path});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "opt=1"));
    CHECK(has_line(r.out, "k=2"));
    CHECK(has_line(r.out, "ratio=0.5"));
}

TEST_CASE("the amplify pipeline lands on the exact soundness ratio") {
    std::string path = write_temp("base.txt", run({"gen", "no-edge"}).out);
    CliRun amp = run({"amplify-so", path, "--q", "2", "--layers", "2", "--full-space"});
    CHECK(amp.code == 0);
    std::string inst_path = write_temp("h2.txt", amp.out);
    CliRun solved = run({"solve-so", inst_path});
    CHECK(solved.code == 0);
    CHECK(has_line(solved.out, "ratio=0.375"));
}

TEST_CASE("emitted instances and reports stay on separate streams") {
    CliRun r = run({"gen", "no-edge"});
    CHECK(r.out.find("cmd=") == std::string::npos);
    CHECK(r.err.find("cmd=gen no-edge") != std::string::npos);
}

TEST_CASE("construction failures exit 1 with the error name") {
    std::string path = write_temp("big.txt", run({"gen", "yes-chain", "--k", "2"}).out);
    CliRun r = run({"amplify-so", path, "--q", "2", "--cap", "10"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error=CapExceeded") != std::string::npos);

    CliRun missing = run({"solve-so", "definitely_not_here.txt"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error=NotFound") != std::string::npos);

    std::string dmc_path = write_temp("dmc.txt", run({"gen", "dmc-no"}).out);
    CliRun wrong_kind = run({"solve-so", dmc_path});
    CHECK(wrong_kind.code == 1);
    CHECK(wrong_kind.err.find("error=SyntaxError") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"solve-so"}).code == 2);          // missing file argument
    CHECK(run({"plan", "--k", "2"}).code == 2);  // missing required --q
}

TEST_CASE("plan prints the documented arithmetic") {
    CliRun r = run({"plan", "--k", "2", "--q", "2"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "B=16"));
    CHECK(has_line(r.out, "p2=10240"));
    CHECK(has_line(r.out, "delta=1/16"));

    CliRun dmc = run({"plan-dmc", "--p", "1", "--q", "2"});
    CHECK(has_line(dmc.out, "M=6"));
    CHECK(has_line(dmc.out, "p0=6"));
    CHECK(has_line(dmc.out, "k0=3840"));
}

TEST_CASE("plan goes symbolic beyond uint64") {
    CliRun r = run({"plan", "--k", "6", "--q", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("k0=~2^") != std::string::npos);
}

TEST_CASE("json reports parse as json") {
    CliRun r = run({"solve-so", write_temp("j.txt", run({"gen", "no-edge"}).out), "--json"});
    CHECK(r.code == 0);
    CHECK(r.out.front() == '{');
    CHECK(r.out.find("\"opt\":1") != std::string::npos);
}

TEST_CASE("verify-sampler verifies a required-size family") {
    CliRun r = run({"verify-sampler", "--radix", "4", "--len", "2", "--delta", "0.25",
                    "--count", "32", "--seed", "5"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "verified=1"));
}

TEST_CASE("reduce-dmc --verify reports zero deviation on the full space") {
    std::string path = write_temp("dn.txt", run({"gen", "dmc-no"}).out);
    CliRun r = run({"reduce-dmc", path, "--q", "2", "--m", "2", "--full-space", "--verify"});
    CHECK(r.code == 0);
    CHECK(r.err.find("verified=1") != std::string::npos);
    CHECK(r.err.find("maxdev=0") != std::string::npos);
}

TEST_CASE("min-beta and to-clique round through files") {
    std::string path = write_temp("yc.txt", run({"gen", "yes-chain", "--k", "2"}).out);
    CliRun mb = run({"min-beta", path});
    CHECK(mb.code == 0);
    CHECK(has_line(mb.out, "beta=1"));
    CHECK(has_line(mb.out, "satisfied=2"));

    CliRun tc = run({"to-clique", path, "--beta", "2"});
    CHECK(tc.code == 0);
    std::string clique_path = write_temp("cl.txt", tc.out);
    CliRun sc = run({"solve-clique", clique_path});
    CHECK(sc.code == 0);
    CHECK(has_line(sc.out, "found=1"));
}
