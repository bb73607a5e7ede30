#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kchern/kchern.hpp"

using kchern::io::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    json parsed() const { return json::parse(out); }
};

CliResult run(const std::string& args) {
    std::string cmd = std::string(KCHERN_BIN) + " " + args + " 2>/dev/null";
    CliResult r;
    std::FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(KCHERN_SAMPLES) + "/" + name; }

fs::path temp_json(const std::string& name, const json& j) {
    fs::path p = fs::temp_directory_path() / ("kchern_cli_" + name);
    std::ofstream(p) << j.dump();
    return p;
}

json degree_entry(const json& graded, int n) {
    for (const auto& e : graded)
        if (e["degree"] == n) return e;
    return json();
}

TEST(CliAlgebraCheck, VerdictsAndExitCodes) {
    CliResult ok = run("algebra-check " + sample("m2.json"));
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.parsed()["status"], "pass");
    EXPECT_EQ(ok.parsed()["dim"], 4);

    CliResult bad = run("algebra-check " + sample("broken_assoc.json"));
    EXPECT_EQ(bad.code, 3);
    EXPECT_EQ(bad.parsed()["associativity_failure"], json({1, 1, 1}));

    CliResult unit = run("algebra-check " + sample("unit_last.json"));
    EXPECT_EQ(unit.code, 3);
    EXPECT_NE(unit.parsed()["hint"].get<std::string>().find("swap it into slot 0"), std::string::npos);

    EXPECT_EQ(run("algebra-check /nonexistent.json").code, 2);
    EXPECT_EQ(run("algebra-check").code, 2);
}

TEST(CliHomology, GroundFieldAndProductGoldens) {
    EXPECT_EQ(run("homology --fixture Q --degree 0").parsed()["dims"], json({1}));
    EXPECT_EQ(run("homology --fixture Q --degree 2").parsed()["dims"], json({0}));
    CliResult qq = run("homology " + sample("qxq.json") + " --max-degree 4");
    ASSERT_EQ(qq.code, 0);
    EXPECT_EQ(qq.parsed()["dims"], json({2, 0, 1, 0, 1}));
    EXPECT_EQ(qq.parsed()["homology"][2]["representatives"][0]["text"], "(1)e de de");
    EXPECT_EQ(run("homology --fixture Q --degree 8").code, 3);
    EXPECT_EQ(run("homology " + sample("qxq.json") + " --fixture Q").code, 2);
}

TEST(CliChern, GoldensAndExactDifference) {
    fs::path trivial = temp_json("m2_trivial.json", json::parse(R"({"p": [[["1", "0", "0", "0"]]]})"));
    CliResult t = run("chern " + sample("m2.json") + " " + trivial.string());
    ASSERT_EQ(t.code, 0);
    json ch = t.parsed()["chern"];
    // the trace class of 1 = E11 + E22 is twice that of E11
    EXPECT_EQ(degree_entry(ch, 0)["basis"], json({"E11"}));
    EXPECT_EQ(degree_entry(ch, 0)["coords"], json({"2"}));
    for (int n : {2, 4})
        for (const auto& c : degree_entry(ch, n)["coords"]) EXPECT_EQ(c, "0");
    fs::remove(trivial);

    CliResult e = run("chern --fixture QxQ " + sample("qxq_grassmann_e.json"));
    ASSERT_EQ(e.code, 0);
    json e2 = degree_entry(e.parsed()["chern"], 2);
    EXPECT_EQ(e2["coords"], json({"1"}));
    EXPECT_EQ(e2["basis"], json({"e de de"}));

    CliResult diff = run("chern --fixture dual " + sample("dual_grassmann.json") + " --against " + sample("dual_perturbed.json"));
    ASSERT_EQ(diff.code, 0);
    EXPECT_TRUE(diff.parsed()["against"]["exact"].get<bool>());

    EXPECT_EQ(run("chern " + sample("qxq_grassmann_e.json")).code, 2);
}

TEST(CliKcs, DualNumberGoldensReversalAndConstantPaths) {
    std::string line = "kcs --fixture dual --from " + sample("dual_grassmann.json") + " --to " + sample("dual_dx.json");
    CliResult fwd = run(line);
    ASSERT_EQ(fwd.code, 0);
    json k = fwd.parsed();
    EXPECT_EQ(degree_entry(k["kcs"], 1)["coords"], json({"1"}));
    EXPECT_EQ(degree_entry(k["kcs"], 1)["basis"], json({"1 dx"}));
    EXPECT_EQ(degree_entry(k["kcs"], 3)["coords"], json({"1/3"}));
    EXPECT_TRUE(k["transgression_residual"]["zero"].get<bool>());

    CliResult rev = run(line + " --reverse");
    EXPECT_EQ(degree_entry(rev.parsed()["kcs"], 1)["coords"], json({"-1"}));
    EXPECT_EQ(degree_entry(rev.parsed()["kcs"], 3)["coords"], json({"-1/3"}));

    CliResult same = run("kcs --fixture dual --from " + sample("dual_dx.json") + " --to " + sample("dual_dx.json"));
    ASSERT_EQ(same.code, 0);
    for (const auto& e : same.parsed()["kcs"])
        for (const auto& c : e["coords"]) EXPECT_EQ(c, "0");

    CliResult path = run("kcs --fixture dual --path " + sample("dual_path.json"));
    EXPECT_EQ(path.code, 0);
}

TEST(CliKcs, EndpointsOnDifferentModulesAreRejected) {
    fs::path two = temp_json("dual_two.json", json::parse(R"({"p": [[["1", "0"], ["0", "0"]], [["0", "0"], ["1", "0"]]]})"));
    EXPECT_EQ(run("kcs --fixture dual --from " + sample("dual_grassmann.json") + " --to " + two.string()).code, 3);
    fs::remove(two);
    EXPECT_EQ(run("kcs --fixture dual --kmax 5 --path " + sample("dual_path.json")).code, 3);
}

TEST(CliVerify, SuitesPassAndRerunsAreIdentical) {
    fs::path a = fs::temp_directory_path() / "kchern_cli_verify_a.json";
    fs::path b = fs::temp_directory_path() / "kchern_cli_verify_b.json";
    CliResult first = run("--seed 3 --out " + a.string() + " verify --suite transgression --fixture dual --fixture QxQ");
    CliResult second = run("--seed 3 --out " + b.string() + " verify --suite transgression --fixture dual --fixture QxQ");
    EXPECT_EQ(first.code, 0);
    EXPECT_NE(first.out.find("checks passed"), std::string::npos);
    json ja = kchern::io::read_json_file(a.string()), jb = kchern::io::read_json_file(b.string());
    EXPECT_EQ(kchern::io::without_timing(ja), kchern::io::without_timing(jb));
    bool has_triangle = false, has_bigon = false;
    for (const auto& r : ja["results"]) {
        std::string name = r["name"];
        has_triangle = has_triangle || name.find("triangle") != std::string::npos;
        has_bigon = has_bigon || name.find("secondary") != std::string::npos;
    }
    EXPECT_TRUE(has_triangle);
    EXPECT_TRUE(has_bigon);
    fs::remove(a);
    fs::remove(b);
}

TEST(CliVerify, BadInputs) {
    EXPECT_EQ(run("verify --suite nope").code, 2);
    EXPECT_EQ(run("verify --fixture nope").code, 2);
    EXPECT_EQ(run("verify --suite dga --algebra " + sample("broken_assoc.json")).code, 3);
    CliResult extra = run("verify --suite dga --fixture Q --algebra " + sample("qxq.json"));
    EXPECT_EQ(extra.code, 0);
    EXPECT_EQ(run("frobnicate").code, 2);
}

}  // namespace
