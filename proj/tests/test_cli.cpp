#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string(REFADAPT_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("exit codes") {
    const auto dir = std::filesystem::temp_directory_path() / "refadapt_cli_test";
    std::filesystem::remove_all(dir);
    CHECK(cli("lattice --m 3 --h 2") == 0);
    CHECK(cli("run --problem dtlz2 --m 3 --n 20 --evals 400 --seeds 1 --out " + dir.string()) == 0);
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(cli("run --problem nope --m 3") == 1);
    CHECK(cli("run --problem dtlz2 --m 3 --n 50 --evals 10") == 1);
    CHECK(cli("run --bogus-flag") == 1);
    CHECK(cli("") == 1);

    std::filesystem::create_directories(dir);
    std::ofstream(dir / "cfg.json") << R"({"problem": "maf1", "n": 20, "evals": 300, "seeds": [1]})";
    CHECK(cli("run --config " + (dir / "cfg.json").string() + " --m 3") == 0);
    std::ofstream(dir / "bad.json") << R"({"problem": "maf1", "colour": 3})";
    CHECK(cli("run --config " + (dir / "bad.json").string()) == 1);

    // output directory that cannot be created
    std::ofstream(dir / "file") << "x";
    CHECK(cli("run --problem dtlz2 --m 3 --n 20 --evals 400 --seeds 1 --out " + (dir / "file" / "sub").string()) ==
          2);
    CHECK(cli("simulate --n 24") == 0);
}
