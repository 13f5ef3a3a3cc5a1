#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

using namespace betarep;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    args.insert(args.begin(), "betarep");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("expand") {
    CHECK(call({"expand", "--beta-named", "e"}).out == "0.2121111212…\n");
    CHECK(call({"expand", "--beta", "10", "-u", "0.25"}).out == "0.25\n");
    CHECK(call({"expand", "--beta-named", "phi", "-u", "5"}).out == "1000.1001\n");
    CHECK(call({"expand", "--beta", "2", "-u", "3"}).out == "11.\n");
    CHECK(call({"expand", "--beta-named", "e", "--digits", "300"}).code == cli::kExitPrecision);
}

TEST_CASE("unity") {
    const Outcome rho = call({"unity", "--beta-named", "rho"});
    CHECK(rho.code == 0);
    CHECK(rho.out.find("d_beta(1): 10001\n") != std::string::npos);
    CHECK(rho.out.find("finite: yes") != std::string::npos);
    const Outcome g5 = call({"unity", "--beta-named", "gamma5"});
    CHECK(g5.out.find("d_beta(1): 2011002001") != std::string::npos);
    CHECK(g5.out.find("finite: no") != std::string::npos);
    const Outcome three = call({"unity", "--beta", "3"});
    CHECK(three.out.find("d_beta(1): 3\n") != std::string::npos);
    CHECK(three.out.find("finite: yes") != std::string::npos);
    CHECK(three.out.find("monotone: yes") != std::string::npos);
}

TEST_CASE("reduce") {
    const Outcome phi = call({"reduce", "--beta-named", "phi", "--word", "13.01"});
    CHECK(phi.code == 0);
    const auto l = lines(phi.out);
    REQUIRE(l.size() >= 6);
    CHECK(l[0].rfind("0: 13.01 ", 0) == 0);
    CHECK(l[5].rfind("5: 1000.1001 ", 0) == 0);
    CHECK(phi.out.find("status: clean") != std::string::npos);
    const Outcome two = call({"reduce", "--beta", "2", "--word", "3"});
    CHECK(two.code == 0);
    CHECK(two.out.find("1: 11. ") != std::string::npos);
    const Outcome chi = call({"reduce", "--beta-named", "chi", "--word", "2"});
    CHECK(chi.code == cli::kExitBudget);
    CHECK(chi.out.find("status: truncated") != std::string::npos);
    CHECK(chi.out.find("dropped: 0\n") == std::string::npos);
    CHECK(call({"reduce", "--beta-named", "phi"}).code == cli::kExitUsage);
    CHECK(call({"reduce", "--beta-named", "phi", "--word", "1x"}).code == cli::kExitUsage);
}

TEST_CASE("bounds") {
    const Outcome b = call({"bounds", "--beta", "4", "--beta-named", "gamma5", "--beta-named", "mu3"});
    CHECK(b.code == 0);
    const auto l = lines(b.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] ==
          "beta,label,dbar_betaE,dbar_betaE_rational,dbar_betaE_exact,thm2_upper,thm2_upper_rational,thm3_lower,"
          "coverage_upper,coverage_k,is_special_point");
    auto field = [](const std::string& row, int i) {
        std::istringstream in(row);
        std::string f;
        for (int j = 0; j <= i; ++j) std::getline(in, f, ',');
        return f;
    };
    CHECK(std::stod(field(l[1], 7)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(field(l[1], 3) == "3");
    CHECK(field(l[2], 6) == "9/10");
    CHECK(field(l[3], 3) == "2/3");
    CHECK(field(l[3], 4) == "exact");
    CHECK(call({"bounds"}).code == cli::kExitUsage);
    CHECK(call({"bounds", "--beta", "0.5"}).code == cli::kExitUsage);
}

TEST_CASE("coverage") {
    const Outcome two = call({"coverage", "--beta", "2", "-k", "6", "--spot-check", "1000"});
    CHECK(two.code == 0);
    const auto l = lines(two.out);
    REQUIRE(l.size() >= 2);
    CHECK(l[0] == "beta,k,S,bound,covered,worst_gap,sequences_examined,wall_time");
    CHECK(l[1].rfind("2,6,6,1,true,", 0) == 0);
    const Outcome three = call({"coverage", "--beta", "3", "-k", "5"});
    CHECK(lines(three.out)[1].rfind("3,5,10,2,true,", 0) == 0);
    CHECK(call({"coverage", "--beta", "2", "-k", "6", "--budget", "10"}).code == cli::kExitBudget);

    const auto ck = (std::filesystem::temp_directory_path() / "betarep_cli_test.ck").string();
    std::filesystem::remove(ck);
    CHECK(call({"coverage", "--beta-named", "e", "-k", "6", "--s-max", "3", "--checkpoint", ck}).code == 0);
    const Outcome resumed = call({"coverage", "--beta-named", "e", "-k", "6", "--checkpoint", ck, "--resume"});
    const Outcome fresh = call({"coverage", "--beta-named", "e", "-k", "6"});
    auto strip_time = [](const std::string& row) { return row.substr(0, row.rfind(',')); };
    CHECK(strip_time(lines(resumed.out)[1]) == strip_time(lines(fresh.out)[1]));
    std::filesystem::remove(ck);
}

TEST_CASE("figure1 and json") {
    CHECK(call({"figure1", "--grid-points", "0"}).code == cli::kExitUsage);
    const auto json_path = (std::filesystem::temp_directory_path() / "betarep_cli_test.json").string();
    const Outcome f = call({"figure1", "--grid", "2.1", "--grid", "3", "--k-max", "4", "--no-special-points",
                            "--json", json_path});
    CHECK(f.code == 0);
    const auto l = lines(f.out);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == "beta,dbar_betaE,thm2_upper,coverage_upper,thm3_lower,is_special_point");
    const auto doc = nlohmann::json::parse(slurp(json_path));
    CHECK(doc.contains("config"));
    CHECK(doc.contains("result"));
    std::filesystem::remove(json_path);
}

TEST_CASE("probe") {
    const Outcome p = call({"probe", "--c", "0.5", "--beta", "4", "--theta", "0.1", "--steps", "500",
                            "--initial-vectors", "8"});
    CHECK(p.code == 0);
    CHECK(lines(p.out).at(0) == "theta,x0_angle,empirical_rate,reference_rate,T");
    CHECK(call({"probe", "--beta", "4", "--theta", "2"}).code == cli::kExitUsage);
    CHECK(call({"nonsense"}).code == cli::kExitUsage);
}

TEST_CASE("figure1 is bit-identical across runs with 8 workers") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "betarep_fig_a.csv", b = dir / "betarep_fig_b.csv";
    const std::string base = std::string(BETAREP_CLI_PATH) + " figure1 --grid-lo 1.00 --grid-step 0.05 --grid-points 60 --k-max 8 --workers 8 --csv ";
    REQUIRE(std::system((base + a.string()).c_str()) == 0);
    REQUIRE(std::system((base + b.string()).c_str()) == 0);
    const std::string first = slurp(a);
    CHECK(first.size() > 1000);
    CHECK(first == slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}
