#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace support;

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
};

run_result run_cli(const std::string& args) {
    std::string command = std::string(MODSM_CLI_PATH) + " " + args + " 2>/dev/null";
    run_result r;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
        r.out.append(buffer, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "modsm_cli_test";
    std::filesystem::create_directories(dir);
    std::filesystem::path file = dir / name;
    std::ofstream out(file, std::ios::binary);
    out << text;
    return file.string();
}

} // namespace

TEST_CASE("solve prints canonical models and deterministic bytes") {
    std::string file = write_temp("p.lp", "a :- not b.\nb :- not a.\nc :- a.\n");
    run_result first = run_cli("solve " + file);
    CHECK(first.exit_code == 0);
    CHECK(first.out == "{a,c}\n{b}\n");
    CHECK(run_cli("solve " + file).out == first.out);
    CHECK(run_cli("solve --strategy instantiate " + file).out == first.out);
    CHECK(run_cli("solve --max-models 1 " + file).out == "{a,c}\n");
}

TEST_CASE("check --pair reports mutual dependence with exit 1") {
    std::string p1 = write_temp("p1.lp", "#input b. #output a.\na :- b.\n");
    std::string p2 = write_temp("p2.lp", "#input a. #output b.\nb :- a.\n");
    run_result r = run_cli("check " + p1 + " --pair " + p2);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("MutualDependence({a,b})") != std::string::npos);

    run_result ok = run_cli("check " + p1);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "ok\n");
}

TEST_CASE("check --pair distinguishes the join from the semantical join") {
    std::string p = write_temp("ex_p.lp", "#input b. #output a, c.\na :- b.\na :- not c.\n");
    std::string q = write_temp("ex_q.lp", "#input a. #output b.\nb :- a.\n");
    run_result r = run_cli("check " + p + " --pair " + q);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("MutualDependence({a,b})") != std::string::npos);
    CHECK(r.out.find("semantical join: defined") != std::string::npos);
}

TEST_CASE("eq accepts numeric inputs") {
    module m = mod("#input b. #output a.\na.\n");
    std::string bytes = io::encode_smodels(m);
    std::string left = write_temp("eq_num1.sm", bytes);
    std::string right = write_temp("eq_num2.sm", bytes);
    CHECK(run_cli("--format smodels eq --kind modular " + left + " " + right).exit_code == 0);
}

TEST_CASE("eq kinds and exit codes") {
    std::string p = write_temp("q1.lp", "#input b. #output a.\na.\n");
    std::string q = write_temp("q2.lp", "#input b. #output a.\na :- b.\na :- not b.\n");
    std::string r = write_temp("q3.lp", "#input b. #output a.\n");
    CHECK(run_cli("eq --kind modular " + p + " " + q).exit_code == 0);
    CHECK(run_cli("eq --kind modular --method generator " + p + " " + q).exit_code == 0);
    CHECK(run_cli("eq --kind modular " + p + " " + r).exit_code == 1);
}

TEST_CASE("split output feeds cat across formats and modes") {
    std::string file = write_temp("split.lp",
                                  "#hidden h.\na :- not b.\nb :- not a.\nc :- a, not h.\n"
                                  "h :- c.\n");
    for (const char* mode : {"pos-hidden", "posneg-hidden"}) {
        for (const char* fmt : {"text", "smodels"}) {
            std::string stream = write_temp("stream.bin", "");
            run_result split = run_cli(std::string("--format text --output-format ") + fmt +
                                       " split --mode " + mode + " " + file + " -o " + stream);
            REQUIRE(split.exit_code == 0);
            run_result cat = run_cli(std::string("--format ") + fmt +
                                     " --output-format text cat " + stream +
                                     " --check-rules 4");
            CHECK(cat.exit_code == 0);
        }
    }
}

TEST_CASE("split writes directories of module files") {
    std::string file = write_temp("dirsplit.lp", "a :- not b.\nb :- not a.\nc :- a.\n");
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "modsm_cli_test" / "parts";
    std::filesystem::remove_all(dir);
    run_result split =
        run_cli("split --mode pos " + file + " --dir " + dir.string());
    REQUIRE(split.exit_code == 0);
    CHECK(std::filesystem::exists(dir / "mod-0.lp"));
    CHECK(std::filesystem::exists(dir / "mod-2.lp"));
    run_result cat = run_cli("cat " + (dir / "mod-0.lp").string() + " " +
                             (dir / "mod-1.lp").string() + " " +
                             (dir / "mod-2.lp").string());
    CHECK(cat.exit_code == 0);
    CHECK(cat.out.find("c :- a.") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("eq onlyone.lp").exit_code == 2);
    CHECK(run_cli("solve /nonexistent/file.lp").exit_code == 2);
    std::string file = write_temp("bad.lp", "a :- :- b.\n");
    CHECK(run_cli("solve " + file).exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("eva subcommand mirrors the library verdict") {
    std::string good = write_temp("eva1.lp", "a :- not b.\nb :- not a.\n");
    std::string bad = write_temp("eva2.lp", "#output a. #hidden d.\na.\n{d}.\n");
    run_result r1 = run_cli("eva " + good);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == "true\n");
    run_result r2 = run_cli("eva " + bad);
    CHECK(r2.exit_code == 1);
    CHECK(r2.out == "false\n");
}

TEST_CASE("the cap honours the MODSM_CAP environment variable") {
    std::ostringstream os;
    for (int i = 0; i < 12; ++i)
        os << "{x" << i << "}.\n";
    std::string file = write_temp("wide.lp", os.str());
    CHECK(run_cli("solve --max-models 1 " + file).exit_code == 0);

    std::string command = "MODSM_CAP=16 " + std::string(MODSM_CLI_PATH) + " solve " + file +
                          " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("stdin and stdout dashes") {
    std::string file = write_temp("pipe.lp", "a.\n");
    std::string command = "cat " + file + " | " + std::string(MODSM_CLI_PATH) +
                          " solve - 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[256];
    std::string out;
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
        out.append(buffer, n);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK(out == "{a}\n");
}
