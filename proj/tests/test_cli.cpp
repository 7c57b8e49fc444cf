#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("STABLELIKE_CLI");
    REQUIRE(p != nullptr);
    return p;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tmp_dir(const std::string& leaf) {
    return "/tmp/stablelike_cli_test/" + leaf;
}

}  // namespace

TEST_CASE("constants: values and exit codes") {
    auto r = run("constants --alpha 1.0000001");
    CHECK(r.exit_code == 0);
    CHECK(std::stod(r.out.substr(r.out.find('=') + 1)) < 1e-5);

    r = run("constants --alpha 0 --beta 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("= 2") != std::string::npos);
    CHECK(r.out.find("T/beta = 4") != std::string::npos);

    CHECK(run("constants --alpha 2.5").exit_code == 2);
    CHECK(run("constants --alpha 0.5").exit_code == 2);  // R needs (1,2)
    CHECK(run("constants").exit_code == 2);              // missing required
}

TEST_CASE("pdf: Cauchy centre and tail law") {
    auto r = run("pdf --alpha 1 --scale 1 --y 0");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(r.out) - 0.3183098861837907) < 1e-10);

    r = run("pdf --alpha 1.5 --y 1000");
    CHECK(r.exit_code == 0);
    const double c15 = 0.29926508425429737;  // (1/pi) Gamma(2.5) sin(3pi/4)
    const double expected = c15 * std::pow(1000.0, -2.5);
    CHECK(std::abs(std::stod(r.out) / expected - 1.0) < 0.02);

    CHECK(run("pdf --alpha 1.5").exit_code == 2);      // no evaluation point
    CHECK(run("pdf --alpha 2.5 --y 0").exit_code == 2);
}

TEST_CASE("sample: reproducibility and the Gaussian variance check") {
    const auto a = run("sample --alpha 2 --n 20000 --seed 7");
    const auto b = run("sample --alpha 2 --n 20000 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    // parse the CSV and check the variance against 2 gamma^2
    std::stringstream ss(a.out);
    std::string line;
    std::getline(ss, line);  // header
    double sum = 0.0, sum2 = 0.0;
    long n = 0;
    while (std::getline(ss, line)) {
        const double v = std::stod(line.substr(line.find(',') + 1));
        sum += v;
        sum2 += v * v;
        ++n;
    }
    CHECK(n == 20000);
    const double var = sum2 / n - (sum / n) * (sum / n);
    CHECK(std::abs(var - 2.0) < 0.12);

    CHECK(run("sample --alpha 2 --n 0 --seed 7").exit_code == 2);
    CHECK(run("sample --alpha 2 --n 5").exit_code == 2);  // seed required
}

TEST_CASE("classify: verdicts, outputs and the mixed-regime exit") {
    const std::string d1 = tmp_dir("cls_rec");
    auto r = run("classify --preset pareto_sym --preset-alpha 1.5 "
                 "--grid logspace:1e3:1e5:5 --out " + d1);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("RecurrentEvidence") != std::string::npos);
    const auto report = nlohmann::json::parse(slurp(d1 + "/report.json"));
    CHECK(report.at("verdict") == "RecurrentEvidence");
    CHECK(slurp(d1 + "/report.csv").find("condition_15_delta_trend") !=
          std::string::npos);
    const auto manifest = nlohmann::json::parse(slurp(d1 + "/manifest.json"));
    CHECK(manifest.at("tool_version") == "0.1.0");
    CHECK(manifest.at("config_hash").get<std::string>().size() == 16);

    const std::string d2 = tmp_dir("cls_tr");
    r = run("classify --preset pareto_sym --preset-alpha 0.5 "
            "--grid logspace:1e3:1e5:5 --betas 0.25,0.1 --out " + d2);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("TransientEvidence") != std::string::npos);

    // mixed regime
    const std::string mixed = tmp_dir("mixed.json");
    run("constants --alpha 1.5");  // ensure tmp root exists via mkdir below
    std::system(("mkdir -p " + tmp_dir("")).c_str());
    std::ofstream(mixed) << R"json({"family":"exact_stable","alpha":"ite(x<0,0.8,1.5)",
        "skew":"0","scale":"1","shift":"0","k_cutoff":1.0,"l_cutoff":1.0})json";
    CHECK(run("classify --config " + mixed + " --grid logspace:1e3:1e5:5").exit_code ==
          3);

    // malformed profile: syntax error -> input error exit
    const std::string bad = tmp_dir("bad.json");
    std::ofstream(bad) << R"json({"family":"exact_stable","alpha":"1.5+","skew":"0",
        "scale":"1","shift":"0","k_cutoff":1.0,"l_cutoff":1.0})json";
    CHECK(run("classify --config " + bad + " --grid logspace:1e3:1e5:5").exit_code == 2);
    CHECK(run("classify --preset nope").exit_code == 2);
}

TEST_CASE("simulate: byte-identical summaries, validation exit") {
    const std::string d1 = tmp_dir("sim_a");
    const std::string d2 = tmp_dir("sim_b");
    const std::string args = "simulate --preset sas_const --preset-alpha 1.5 "
                             "--steps 2000 --paths 24 --seed 42 --burn-in 100 "
                             "--radius 1 --per-path --out ";
    CHECK(run(args + d1).exit_code == 0);
    CHECK(run(args + d2).exit_code == 0);
    CHECK(slurp(d1 + "/summary.json") == slurp(d2 + "/summary.json"));
    CHECK(slurp(d1 + "/paths.csv") == slurp(d2 + "/paths.csv"));
    CHECK(slurp(d1 + "/summary.json").find("recurrence_score") != std::string::npos);

    CHECK(run("simulate --preset sas_const --paths 0 --steps 10 --seed 1 --out " +
              tmp_dir("sim_c"))
              .exit_code == 2);
}

TEST_CASE("simulate: thread count changes nothing") {
    const std::string d1 = tmp_dir("sim_t1");
    const std::string d4 = tmp_dir("sim_t4");
    const std::string base = "simulate --preset sas_const --preset-alpha 0.5 "
                             "--steps 1500 --paths 32 --seed 9 --out ";
    CHECK(run(base + d1 + " --threads 1").exit_code == 0);
    CHECK(run(base + d4 + " --threads 4").exit_code == 0);
    CHECK(slurp(d1 + "/summary.json") == slurp(d4 + "/summary.json"));
}

TEST_CASE("check: pass and fail exits") {
    CHECK(run("check --preset pareto_sym --preset-alpha 1.5").exit_code == 0);
    CHECK(run("check --preset sas_const --preset-alpha 1.5").exit_code == 0);
    // range violation in the index profile
    const std::string bad = tmp_dir("range.json");
    std::system(("mkdir -p " + tmp_dir("")).c_str());
    std::ofstream(bad) << R"json({"family":"exact_stable","alpha":"2.5","skew":"0",
        "scale":"1","shift":"0","k_cutoff":1.0,"l_cutoff":1.0})json";
    CHECK(run("check --config " + bad).exit_code == 2);
    // diagnostic still large at small y: condition-check failure exit
    CHECK(run("check --preset sas_const --preset-alpha 1.7 --y-grid 2,4,8")
              .exit_code == 4);
}

TEST_CASE("manifest config hash is stable under key order and whitespace") {
    const std::string da = tmp_dir("hash_a");
    const std::string db = tmp_dir("hash_b");
    const std::string fa = tmp_dir("conf_a.json");
    const std::string fb = tmp_dir("conf_b.json");
    std::system(("mkdir -p " + tmp_dir("")).c_str());
    std::ofstream(fa) << R"json({"family":"pareto_tail","alpha_plus":"0.5",
        "alpha_minus":"0.5","c_plus":"0.2","c_minus":"0.2","k_cutoff":1.0,
        "l_cutoff":1.0})json";
    std::ofstream(fb) << R"json({ "l_cutoff": 1.0, "k_cutoff": 1.0,
        "c_minus": "0.2", "c_plus": "0.2",
        "alpha_minus": "0.5", "alpha_plus": "0.5", "family": "pareto_tail" })json";
    CHECK(run("check --preset pareto_sym").exit_code == 0);
    CHECK(run("simulate --config " + fa +
              " --steps 100 --paths 4 --seed 3 --out " + da).exit_code == 0);
    CHECK(run("simulate --config " + fb +
              " --steps 100 --paths 4 --seed 3 --out " + db).exit_code == 0);
    const auto ma = nlohmann::json::parse(slurp(da + "/manifest.json"));
    const auto mb = nlohmann::json::parse(slurp(db + "/manifest.json"));
    CHECK(ma.at("config_hash") == mb.at("config_hash"));
    CHECK(slurp(da + "/summary.json") == slurp(db + "/summary.json"));
}
