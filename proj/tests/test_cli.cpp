#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(INVAR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.stdout_text.append(buffer, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() / ("invar_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& contents) const {
    fs::path p = dir_ / name;
    std::ofstream out(p);
    out << contents;
    return p.string();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("cli pipelines behave as documented") {
  TempDir tmp;

  SUBCASE("match decide answers YES on the diagonal instance, deterministically") {
    auto path = tmp.file("diag2.json", R"({"n":2,"edges":[[1,1,1],[2,2,2]]})");
    auto first = run_cli("match decide --instance " + path + " --seed 7");
    CHECK(first.exit_code == 0);
    CHECK(first.stdout_text == "{\"answer\":\"YES\"}\n");
    auto second = run_cli("match decide --instance " + path + " --seed 7");
    CHECK(second.stdout_text == first.stdout_text);
  }

  SUBCASE("match decide answers NO with exit code 1") {
    auto path = tmp.file("no2.json", R"({"n":2,"edges":[[1,1,1],[1,2,2]]})");
    auto res = run_cli("match decide --instance " + path + " --seed 7");
    CHECK(res.exit_code == 1);
    CHECK(nlohmann::json::parse(res.stdout_text)["answer"] == "NO");
  }

  SUBCASE("match verify-mindeg reports the counts") {
    auto res = run_cli("match verify-mindeg --n 2");
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.stdout_text);
    CHECK(j["ok"] == true);
    CHECK(j["counts"] == nlohmann::json::array({0, 4}));
  }

  SUBCASE("nullcone on the zero tensor certifies the full margin") {
    auto path = tmp.file("zero.json", R"({"n":2,"entries":[]})");
    auto res = run_cli("nullcone --tensor " + path);
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.stdout_text);
    CHECK(j["verdict"] == "in_null_cone");
    CHECK(j["certificate"]["t"] == "1");
  }

  SUBCASE("nullcone exit code 1 outside the null cone") {
    auto path = tmp.file("diag_t.json", R"({"n":2,"entries":[[1,1,1,"1"],[2,2,2,"1"]]})");
    auto res = run_cli("nullcone --tensor " + path);
    CHECK(res.exit_code == 1);
    CHECK(nlohmann::json::parse(res.stdout_text)["verdict"] == "not_in_null_cone");
  }

  SUBCASE("hyperpf project --check matches the documented example") {
    auto path = tmp.file("X.json", R"([[1,2],[3,4]])");
    auto res = run_cli("hyperpf project --k 2 --d 2 --matrix " + path + " --check");
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.stdout_text);
    CHECK(j["eval"] == "20");
    CHECK(j["expected"] == "20");
    CHECK(j["ok"] == true);
  }

  SUBCASE("hyperpf project emits a tensor that hyperpf eval accepts") {
    auto path = tmp.file("X.json", R"([[1,2],[3,4]])");
    auto projected = run_cli("hyperpf project --k 2 --d 2 --matrix " + path);
    CHECK(projected.exit_code == 0);
    auto tensor_path = tmp.file("p.json", projected.stdout_text);
    auto eval = run_cli("hyperpf eval --tensor " + tensor_path);
    CHECK(eval.exit_code == 0);
    CHECK(nlohmann::json::parse(eval.stdout_text)["eval"] == "20");
  }

  SUBCASE("pit classifies circuits and homog output feeds back into pit") {
    // y0 * y1 as a circuit file
    auto nonzero = tmp.file("yy.json",
                            R"({"m":0,"r":2,"gates":[{"op":"yvar","index":0},{"op":"yvar","index":1},)"
                            R"({"op":"mul","l":0,"r":1}],"outputs":[2]})");
    auto res = run_cli("pit --circuit " + nonzero + " --epsilon 1/128 --seed 42");
    CHECK(res.exit_code == 1);
    auto j = nlohmann::json::parse(res.stdout_text);
    CHECK(j["verdict"] == "nonzero");
    CHECK(j["witness"]["prime"].is_number());

    // homog output on an aux-only circuit feeds straight back into pit
    auto aux_only = tmp.file("y1sq.json",
                             R"({"m":0,"r":1,"gates":[{"op":"yvar","index":0},{"op":"const","value":"1"},)"
                             R"({"op":"add","l":0,"r":1},{"op":"mul","l":2,"r":2}],"outputs":[3]})");
    auto homog = run_cli("homog --circuit " + aux_only + " --rmax 2");
    CHECK(homog.exit_code == 0);
    auto sliced_json = nlohmann::json::parse(homog.stdout_text);
    CHECK(sliced_json["outputs"].size() == 3);
    CHECK(sliced_json["outputs"][1].is_null());  // no main variables, so only H_0 is present
    auto sliced_path = tmp.file("y1sq_h.json", homog.stdout_text);
    auto sliced_pit = run_cli("pit --circuit " + sliced_path + " --seed 3");
    CHECK(sliced_pit.exit_code == 1);  // (y+1)^2 is not the zero polynomial

    // the x*y slice at degree 1 keeps its main variable, which pit rejects
    auto mixed = tmp.file("xy.json",
                          R"({"m":1,"r":1,"gates":[{"op":"xvar","index":0},{"op":"yvar","index":0},)"
                          R"({"op":"mul","l":0,"r":1}],"outputs":[2]})");
    auto mixed_h = run_cli("homog --circuit " + mixed + " --rmax 2");
    CHECK(mixed_h.exit_code == 0);
    auto mixed_json = nlohmann::json::parse(mixed_h.stdout_text);
    CHECK(mixed_json["outputs"][0].is_null());
    CHECK(mixed_json["outputs"][2].is_null());
    auto mixed_path = tmp.file("xy_h.json", mixed_h.stdout_text);
    CHECK(run_cli("pit --circuit " + mixed_path + " --seed 3").exit_code == 2);
  }

  SUBCASE("repaudit dim prints the dimension") {
    auto res = run_cli("repaudit dim --N 4 --m 4 --d 1");
    CHECK(res.exit_code == 0);
    CHECK(nlohmann::json::parse(res.stdout_text)["dimension"] == 1);
  }

  SUBCASE("errors exit with code 2") {
    CHECK(run_cli("nullcone --tensor /nonexistent.json").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    auto bad = tmp.file("bad.json", "{not json");
    CHECK(run_cli("nullcone --tensor " + bad).exit_code == 2);
  }
}
