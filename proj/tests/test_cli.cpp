#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::filesystem::path tmp = std::filesystem::temp_directory_path();
    const std::string tag = std::to_string(++counter);
    const std::filesystem::path out_path = tmp / ("lefschetz_cli_out_" + tag + ".txt");
    const std::filesystem::path err_path = tmp / ("lefschetz_cli_err_" + tag + ".txt");

    std::string cmd = std::string(LEFSCHETZ_CLI_PATH) + " " + args + " > " + out_path.string() +
                      " 2> " + err_path.string();
    int rc = std::system(cmd.c_str());

    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

std::string data_file(const std::string& name) {
    return (std::filesystem::path(LEFSCHETZ_DATA_DIR) / name).string();
}

std::filesystem::path write_temp_fibration(const std::string& name, const std::string& text) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

} // namespace

TEST_CASE("verlinde subcommand reports the rank", "[cli]") {
    RunResult r = run_cli("verlinde --genus 2 --level 2 --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "verlinde");
    CHECK(j["rank"] == 10);
    CHECK(j["integer_cross_check"] == true);
    CHECK(j["seed"] == 0);
    CHECK(j["version"] == "1.0.0");
}

TEST_CASE("output is byte-identical across runs", "[cli]") {
    for (const char* args : {"verlinde --genus 3 --level 2 --seed 7 --json",
                             "verlinde --genus 3 --level 2 --seed 7",
                             "reducibility --file  DATA  --seed 7 --json",
                             "theta-check --genus 2 --level 2 --seed 7 --json"}) {
        std::string a(args);
        auto pos = a.find("DATA");
        if (pos != std::string::npos) a.replace(pos, 4, data_file("genus2_block.json"));
        RunResult first = run_cli(a);
        RunResult second = run_cli(a);
        REQUIRE(first.exit_code == 0);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("seed is echoed into the report", "[cli]") {
    RunResult r = run_cli("verlinde --genus 1 --level 1 --seed 42 --json");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["seed"] == 42);
}

TEST_CASE("spin subcommand on the shipped torus word", "[cli]") {
    RunResult r = run_cli("spin --file " + data_file("torus_word.json") + " --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["mod2_image"] == "PreservesOddForm");
    CHECK(j["admits_invariant_form"] == true);
    CHECK(j["odd_count"] == 1);

    RunResult text = run_cli("spin --file " + data_file("torus_word.json"));
    REQUIRE(text.exit_code == 0);
    CHECK(text.out.find("PreservesOddForm") != std::string::npos);
}

TEST_CASE("reducibility subcommand distinguishes the shipped words", "[cli]") {
    RunResult block = run_cli("reducibility --file " + data_file("genus2_block.json") + " --json");
    REQUIRE(block.exit_code == 0);
    json jb = json::parse(block.out);
    CHECK(jb["verdict"] == "reducible");
    CHECK(jb["commutant_dimension"] == 4);
    CHECK(jb["level"] == 2);
    CHECK(jb["invariant_projector"]["rank"] == 2);

    RunResult torus = run_cli("reducibility --file " + data_file("torus_word.json") + " --json");
    REQUIRE(torus.exit_code == 0);
    json jt = json::parse(torus.out);
    CHECK(jt["verdict"] == "irreducible");
    CHECK(jt["commutant_dimension"] == 1);
}

TEST_CASE("bundle subcommand with explicit parameters", "[cli]") {
    RunResult r = run_cli("bundle --genus 2 --level 1 --lambda 1 --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["rank"] == "4");
    CHECK(j["degree"] == "4");
    CHECK(j["higher_chern"] == json::array({"4", "6", "4"}));
    CHECK(j["dual_bundle"]["chi"] == "0");
    CHECK(j["dual_bundle"]["generic_h0"] == "0");
}

TEST_CASE("bundle subcommand derives lambda from the file", "[cli]") {
    RunResult r = run_cli("bundle --file " + data_file("torus_word.json") + " --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["lambda"] == 1);
    CHECK(j["level"] == 2);
    CHECK(j["lambda_source"]["signature"] == -8);
    CHECK(j["rank"] == "3");
    CHECK(j["degree"] == "9/2");
    CHECK(j["degree_is_integral"] == false);
}

TEST_CASE("theta-check defaults reproduce the classical constant", "[cli]") {
    RunResult r = run_cli("theta-check --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["terms_summed"] == 13);
    CHECK(j["value"]["re"].get<double>() == Catch::Approx(1.086434811213308).epsilon(1e-12));
    CHECK(j["truncation_tail_bound"].get<double>() < 1e-20);
}

TEST_CASE("homplus subcommand", "[cli]") {
    RunResult r = run_cli("homplus --fiber-dim 2 --mults 1,1 --ops 12 --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["dimension"] == 18);
    CHECK(j["empty_or_obstructed"] == false);
}

TEST_CASE("malformed input exits with code 2", "[cli]") {
    CHECK(run_cli("spin --file /nonexistent/nowhere.json").exit_code == 2);
    CHECK(run_cli("verlinde --genus 2").exit_code == 2);
    CHECK(run_cli("verlinde --genus 2 --level 2 --bogus-flag").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("bundle --genus 2").exit_code == 2);

    auto p = write_temp_fibration("lefschetz_cli_bad_syntax.json", "{\"genus\": 1,");
    CHECK(run_cli("spin --file " + p.string()).exit_code == 2);
    std::filesystem::remove(p);

    auto q = write_temp_fibration("lefschetz_cli_unknown_key.json",
                                  R"({"genus": 1, "cycles": [[1, 0]], "extra": 3})");
    CHECK(run_cli("spin --file " + q.string()).exit_code == 2);
    std::filesystem::remove(q);

    // No level anywhere: the block file minus its level key.
    auto s = write_temp_fibration("lefschetz_cli_no_level.json",
                                  R"({"genus": 1, "cycles": [[1, 0]]})");
    CHECK(run_cli("reducibility --file " + s.string()).exit_code == 2);
    std::filesystem::remove(s);
}

TEST_CASE("size guards exit with code 3", "[cli]") {
    CHECK(run_cli("reducibility --file " + data_file("genus2_block.json") + " --level 17")
              .exit_code == 3);
    CHECK(run_cli("theta-check --truncation 500").exit_code == 3);
    CHECK(run_cli("theta-check --genus 7").exit_code == 3);
}

TEST_CASE("uncertified precision exits with code 4", "[cli]") {
    CHECK(run_cli("verlinde --genus 62 --level 1").exit_code == 4);
}

TEST_CASE("invariant violations exit with code 5", "[cli]") {
    auto p = write_temp_fibration("lefschetz_cli_nonprimitive.json",
                                  R"({"genus": 1, "cycles": [[2, 4]], "level": 2})");
    CHECK(run_cli("spin --file " + p.string()).exit_code == 5);
    std::filesystem::remove(p);

    auto q = write_temp_fibration(
        "lefschetz_cli_bad_signature.json",
        R"({"genus": 1, "cycles": [[1, 0], [0, 1]], "signature": -7, "level": 2})");
    CHECK(run_cli("bundle --file " + q.string()).exit_code == 5);
    std::filesystem::remove(q);

    CHECK(run_cli("homplus --fiber-dim 2 --mults 1,2 --ops 3").exit_code == 5);
}

TEST_CASE("version flag", "[cli]") {
    RunResult r = run_cli("--version verlinde --genus 1 --level 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1.0.0") != std::string::npos);
}
