#include "ultraharmonic/report.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#ifndef ULTRAHARMONIC_CLI
#error "ULTRAHARMONIC_CLI must name the command-line binary"
#endif

using namespace ultraharmonic;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the binary with a shell-quoted argument string, capturing stdout.
Run cli(const std::string& args)
{
    std::string cmd = std::string("'") + ULTRAHARMONIC_CLI + "' " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / ("uh-cli-" + name)).string(); }

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify")
{
    auto r = cli("classify primes --psyndetic");
    REQUIRE(r.code == 0);
    auto j = parse_report(r.out);
    CHECK(j["results"][0]["harmonic"]["value"] == "Harmonic");
    CHECK(j["results"][0]["psyndetic"]["value"] == "No");
    CHECK(j["results"][0]["psyndetic"].contains("gap_certificate"));

    auto u = cli("classify 'pow(2) | ap(7,5)'");
    CHECK(u.code == 0);
    CHECK(parse_report(u.out)["results"][0]["harmonic"]["value"] == "Harmonic");
}

TEST_CASE("exit codes")
{
    auto bad = cli("classify 'finite{}' 'ap(1,2)'");
    CHECK(bad.code == 1);
    auto j = parse_report(bad.out);
    CHECK(j["status"] == "error");
    CHECK(j["results"][0]["error"]["kind"] == "syntax");
    CHECK(j["results"][0]["error"].contains("position"));
    CHECK(j["results"][1]["harmonic"]["value"] == "Harmonic");

    CHECK(cli("classify 'primes & ap(1,4)' --checkpoints 1000").code == 0);
    CHECK(cli("classify 'primes & ap(1,4)' --checkpoints 1000 --strict").code == 2);
    CHECK(cli("classify primes --strict").code == 0);
    CHECK(cli("experiment no-such-suite").code == 1);
    CHECK(cli("bogus-command").code != 0);
    CHECK(cli("classify primes --checkpoints 100,10").code == 1);
}

TEST_CASE("report re-rendering")
{
    std::string path = temp("report.json");
    REQUIRE(cli("classify 'ap(3,4)' primes --psyndetic -o " + path).code == 0);
    std::string saved = slurp(path);
    auto same = cli("report " + path);
    CHECK(same.code == 0);
    CHECK(same.out == saved);
    auto text = cli("report " + path + " --format text");
    CHECK(text.code == 0);
    CHECK(text.out.find("AP harmonic") != std::string::npos);
    CHECK(text.out.find("prime-free run") != std::string::npos);

    std::string broken = temp("broken.json");
    std::ofstream(broken) << saved.substr(0, saved.size() / 2);
    CHECK(cli("report " + broken).code == 1);
    std::string other = temp("other.json");
    auto j = parse_report(saved);
    j["schema"] = "ultraharmonic/2";
    std::ofstream(other) << j.dump(2);
    CHECK(cli("report " + other).code == 1);
}

TEST_CASE("commands produce typed records")
{
    auto ap = parse_report(cli("ap primes -k 10 --upto 2100").out);
    CHECK(ap["results"][0]["witness"] == Json{{"diff", 210}, {"length", 10}, {"start", 199}});

    auto ex = parse_report(cli("extract primes 'pow(2)' -k 5").out);
    CHECK(ex["results"][0]["extraction"]["values"] == Json{3, 5, 11, 17, 37});

    auto gaps = cli("gaps 'ap(2,3)' --upto 20 --certificate 3");
    REQUIRE(gaps.code == 0);
    auto g = parse_report(gaps.out);
    CHECK(g.dump().find("\"max_gap\":3") != std::string::npos);
    CHECK(g.dump().find("\"start\":\"26\"") != std::string::npos);

    auto gl = cli("glazer --f 'ap(2,2)' --g N --member 'ap(3,1)'");
    REQUIRE(gl.code == 0);
    CHECK(gl.out.find("contains a Glazer sum base element") != std::string::npos);
    auto pr = cli("glazer --principal 3,4 --member 'ap(2,5)'");
    CHECK(pr.code == 0);
    auto pj = parse_report(pr.out);
    CHECK(pj["results"][0]["sum"] == 7);
    CHECK(pj["results"][0]["members"][0]["by_definition"] == true);
}

TEST_CASE("experiments are deterministic")
{
    auto a = cli("experiment fact1 extraction");
    auto b = cli("experiment fact1 extraction");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto j = parse_report(a.out);
    CHECK(j["results"].size() == 2);
    auto c = cli("experiment extraction --a primes --b 'kth(2)' --k 4");
    REQUIRE(c.code == 0);
    auto run = parse_report(c.out)["results"][0]["result"]["properties"][0]["details"]["runs"][0];
    CHECK(run["values"] == Json{2, 5, 11, 17});
}

TEST_CASE("config files")
{
    std::string cfg = temp("config.txt");
    std::ofstream(cfg) << "# desk\nhorizon=5000\ncheckpoints=100,1000\nprecision=exact\n";
    auto r = cli("classify 'primes & ap(1,4)' --config " + cfg);
    REQUIRE(r.code == 0);
    auto j = parse_report(r.out);
    CHECK(j["config"]["horizon"] == 5000);
    CHECK(j["config"]["precision"] == "exact");
    CHECK(j["results"][0]["harmonic"]["diagnostic"]["checkpoints"][1]["exact"].is_string());
    std::ofstream(cfg) << "colour=blue\n";
    CHECK(cli("classify N --config " + cfg).code == 1);
}

}  // TEST_SUITE
