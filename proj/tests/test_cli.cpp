#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
    const int rc = std::system((std::string(PAPERTRAIL_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("cli exit codes") {
    const auto dir = fs::temp_directory_path() / "papertrail_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto bad = (dir / "bad.csv").string();
    std::ofstream(bad) << "publication_id,title\np1,T\n";

    CHECK(cli("--help") == 0);
    CHECK(cli("") == 2);
    CHECK(cli("screen --corpus " + bad + " --out " + (dir / "o.csv").string() + " --report " +
              (dir / "r.json").string()) == 1);
    CHECK(cli("screen --corpus " + testsupport::data_path("synth/corpus.csv") + " --max-authors 0 --out " +
              (dir / "o.csv").string() + " --report " + (dir / "r.json").string()) == 2);
    CHECK(cli("screen --corpus " + testsupport::data_path("synth/corpus.csv") + " --out " +
              (dir / "o.csv").string() + " --report " + (dir / "r.json").string()) == 0);
    CHECK(fs::exists(dir / "r.json"));
    fs::remove_all(dir);
}
