#include "detmethod/report.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace detm;

namespace {

json load(const std::string& name) {
    std::ifstream in(std::string(DETMETHOD_CONFIG_DIR) + "/" + name);
    return json::parse(in);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(DETMETHOD_CLI) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return std::string(DETMETHOD_CONFIG_DIR) + "/" + name; }

std::string scratch(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("detmethod_test_" + name)).string();
}

// every {"value", ...} object carries a known provenance tag
void check_provenance(const json& j, int& tagged) {
    if (j.is_object()) {
        if (j.contains("value")) {
            ASSERT_TRUE(j.contains("provenance")) << j.dump();
            const auto p = j.at("provenance").get<std::string>();
            EXPECT_TRUE(p == "exact" || p == "float" || p == "main-term-diagnostic") << p;
            ++tagged;
        }
        for (const auto& [k, v] : j.items()) check_provenance(v, tagged);
    } else if (j.is_array()) {
        for (const auto& v : j) check_provenance(v, tagged);
    }
}

}  // namespace

TEST(Report, QuadricBrute) {
    auto rep = run(report::parse_config(load("quadric_sphere.json")));
    EXPECT_EQ(rep["result"]["count"]["value"], "24");
    EXPECT_EQ(rep["result"]["count"]["provenance"], "exact");
    for (const char* key : {"instance", "result", "certificates", "diagnostics", "timings", "provenance"})
        EXPECT_TRUE(rep.contains(key)) << key;
    EXPECT_TRUE(rep["timings"].empty());
}

TEST(Report, UnlikeBrute) {
    auto rep = run(report::parse_config(load("unlike_small.json")));
    EXPECT_EQ(rep["result"]["count"]["value"], "2");
}

TEST(Report, MissingFieldNamesIt) {
    try {
        run(report::parse_config(load("malformed_missing_n.json")));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("instance.n"), std::string::npos) << e.what();
    }
    EXPECT_THROW(report::parse_config(json::parse(R"({"instance": {}})")), ConfigError);
    EXPECT_THROW(report::parse_config(json::parse(R"({"command": "nope", "instance": {}})")), ConfigError);
    EXPECT_THROW(report::parse_config(json::parse(R"({"command": "fit", "instance": {}, "threads": 0})")), ConfigError);
    EXPECT_THROW(report::parse_config(json::parse(R"({"command": "quadric", "instance": {}})"), "unlike"), ConfigError);
}

TEST(Report, PipelineSections) {
    auto rep = run(report::parse_config(load("quadric_pipeline.json")));
    EXPECT_EQ(rep["result"]["count"]["value"], "8");
    EXPECT_EQ(rep["result"]["escapes"]["value"], "0");
    EXPECT_TRUE(rep["result"]["polynomials_sound"].get<bool>());
    EXPECT_EQ(rep["provenance"]["hypothesis"], "constant-term");
    EXPECT_TRUE(rep["provenance"]["Y"].contains("n"));
    EXPECT_TRUE(rep["diagnostics"]["Q_matches_E"].get<bool>());
    int tagged = 0;
    check_provenance(rep, tagged);
    EXPECT_GT(tagged, 20);
}

TEST(Report, CertifyAndAux) {
    auto cert = run(report::parse_config(load("certify_quadric.json")));
    ASSERT_EQ(cert["certificates"].size(), 1u);
    EXPECT_TRUE(cert["certificates"][0]["valid"].get<bool>());
    EXPECT_TRUE(cert["result"]["certificates_valid"].get<bool>());
    EXPECT_EQ(cert["certificates"][0]["checked_minors"].size(), 17u);
    auto aux = run(report::parse_config(load("aux_quadric.json")));
    EXPECT_EQ(aux["result"]["escapes"]["value"], "0");
    EXPECT_TRUE(aux["result"]["polynomials_sound"].get<bool>());
    int tagged = 0;
    check_provenance(cert, tagged);
    check_provenance(aux, tagged);
}

TEST(Report, FitAndPartition) {
    auto fit = run(report::parse_config(load("fit_sphere.json")));
    EXPECT_LE(std::stod(fit["result"]["slope"]["value"].get<std::string>()), 1.2);
    auto part = run(report::parse_config(load("unlike_partition.json")));
    EXPECT_TRUE(part["result"]["partition"]["consistent"].get<bool>());
    EXPECT_EQ(part["result"]["count"]["value"], part["result"]["partition"]["total"]["value"]);
}

TEST(Report, DeterministicAcrossThreads) {
    for (const char* name : {"enumerate_congruence.json", "quadric_pipeline.json", "aux_quadric.json"}) {
        json a = load(name), b = load(name);
        a["threads"] = 1;
        b["threads"] = 4;
        auto ra = run(report::parse_config(a)), rb = run(report::parse_config(b));
        EXPECT_EQ(ra.dump(), rb.dump()) << name;
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("quadric --config " + config("quadric_sphere.json") + " --out " + scratch("a.json")), 0);
    EXPECT_EQ(cli("quadric --config " + config("malformed_missing_n.json")), 1);
    EXPECT_EQ(cli("aux --config " + config("hypothesis_violation.json")), 2);
    EXPECT_EQ(cli("enumerate --config " + config("quadric_sphere.json")), 1);
    EXPECT_EQ(cli("quadric --config /nonexistent.json"), 1);
    EXPECT_EQ(cli("frobnicate"), 1);
    EXPECT_EQ(cli(""), 1);
}

TEST(Cli, ByteIdenticalReports) {
    const std::string c = config("enumerate_congruence.json");
    ASSERT_EQ(cli("enumerate --config " + c + " --threads 1 --out " + scratch("t1.json")), 0);
    ASSERT_EQ(cli("enumerate --config " + c + " --threads 1 --out " + scratch("t1b.json")), 0);
    ASSERT_EQ(cli("enumerate --config " + c + " --threads 1 --seed 1 --out " + scratch("t1c.json")), 0);
    EXPECT_EQ(read_file(scratch("t1.json")), read_file(scratch("t1b.json")));
    EXPECT_FALSE(read_file(scratch("t1.json")).empty());
    const std::string cc = config("certify_quadric.json");
    ASSERT_EQ(cli("certify --config " + cc + " --out " + scratch("c1.json")), 0);
    ASSERT_EQ(cli("certify --config " + cc + " --threads 3 --out " + scratch("c2.json")), 0);
    EXPECT_EQ(read_file(scratch("c1.json")), read_file(scratch("c2.json")));
}
