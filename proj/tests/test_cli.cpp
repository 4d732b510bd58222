#include "twy/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace twy;
using nlohmann::json;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.m = 1;
    c.n = 2;
    c.l = 1;
    c.K = 2;
    c.samples = 2;
    c.nu_max = 1;
    return c;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(TWY_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("list parsers") {
    auto q = parse_q_list("1/3, -2/7,5");
    REQUIRE(q.size() == 3);
    CHECK(q[0] == qfrac(1, 3));
    CHECK(q[1] == qfrac(-2, 7));
    CHECK(q[2] == Q(5));
    CHECK(parse_int_list("1,2") == std::vector<int>{1, 2});
    CHECK(parse_sigma("-1,2") == SignedPerm::from_images({-1, 2}));
    CHECK_THROWS_AS(parse_sigma("1,1"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("1,x"), ConfigError);
}

TEST_CASE("labels") {
    RunConfig c = small_config();
    c.m = 2;
    CHECK(resolve_mu(c, CaseTag::SpSo, 2) == generic_weight(CaseTag::SpSo, 2, 1));
    c.mu = "generic:7";
    CHECK(resolve_mu(c, CaseTag::SpSo, 2) == generic_weight(CaseTag::SpSo, 2, 7));
    c.mu = "1/3,2/7";
    CHECK(resolve_mu(c, CaseTag::SpSo, 2) == std::vector<Q>{qfrac(1, 3), qfrac(2, 7)});
    c.mu = "1,2";
    CHECK_THROWS_AS(resolve_mu(c, CaseTag::SpSo, 2), GenericityError);
    c.mu = "1/3";
    CHECK_THROWS_AS(resolve_mu(c, CaseTag::SpSo, 2), ConfigError);
}

TEST_CASE("configuration errors") {
    RunConfig c = small_config();
    CHECK_THROWS_AS(validate(c, "no-such-suite"), ConfigError);
    c.cases = {CaseTag::SoSp};
    c.case_explicit = true;
    c.n = 1;
    CHECK_THROWS_AS(validate(c, "relations"), ConfigError);
    c.n = 2;
    c.K = 0;
    CHECK_THROWS_AS(validate(c, "relations"), ConfigError);
}

TEST_CASE("suites run and reports are deterministic") {
    RunConfig c = small_config();
    c.m = 2;
    for (const auto& s : suite_names()) {
        Report rep(c);
        validate(c, s);
        run_suite(s, c, rep);
        CHECK_MESSAGE(rep.all_pass(), s);
        CHECK_MESSAGE(rep.count("pass") > 0, s);
    }
    Report a(c), b(c);
    run_suite("relations", c, a);
    run_suite("relations", c, b);
    CHECK(a.to_json().dump() == b.to_json().dump());
    json j = a.to_json();
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["config"]["K"] == 2);
    REQUIRE(j.contains("generic_weights"));
    CHECK(j["generic_weights"]["sp"]["labels"].size() == 2);
    CHECK(j["generic_weights"]["sp"]["rejected"].is_array());
    REQUIRE(j["entries"].is_array());
    for (const auto& e : j["entries"]) {
        CHECK(e.contains("suite"));
        CHECK(e.contains("check"));
        CHECK(e.contains("status"));
    }
}

TEST_CASE("relations at the acceptance size") {
    RunConfig c = small_config();
    c.K = 4;
    Report rep(c);
    run_suite("relations", c, rep);
    CHECK(rep.all_pass());
    CHECK(rep.count("fail") == 0);
}

TEST_CASE("long witnesses are cut") {
    Report rep(small_config());
    rep.add({"x", json::object(), "long", "fail", std::string(5000, 'w'), json()});
    std::string path = "twy_test_witness.txt";
    json j = rep.to_json(100, path);
    CHECK(j["entries"][0]["witness"].get<std::string>().size() <= 200);
    CHECK(slurp(path).find(std::string(5000, 'w')) != std::string::npos);
    std::remove(path.c_str());
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("exit codes of the tool") {
    CHECK(run_cli("run --suite relations --m 1 --n 1 --K 2") == 0);
    CHECK(run_cli("run --suite isis --case sp --m 2 --n 1 --nu 1,1 --sigma -1,2 --mu generic:42") == 0);
    CHECK(run_cli("run --suite verma --case sp --m 2 --n 1 --mu 1,2 --K 2") == 3);
    CHECK(run_cli("run --suite relations --case so --n 1") == 2);
    CHECK(run_cli("run --no-such-flag") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("dump --what beta --case sp --m 1 --n 1 --K 2") == 0);
    CHECK(run_cli("dump --what intertwiner --case sp --m 2 --n 1 --nu 1,1 --sigma 2,1 --format csv") == 0);

    std::string out = "twy_test_report.json";
    REQUIRE(run_cli("run --suite braid --case sp --m 2 --n 1 --nu-max 1 --out " + out) == 0);
    json j = json::parse(slurp(out));
    CHECK(j["schema"] == kReportSchema);
    CHECK_FALSE(j["entries"].empty());
    std::remove(out.c_str());
    std::remove((out + ".witness.txt").c_str());
}
