// Shell-level checks of the CLI binary: exit codes, report files, sieve
// cache, and byte-identical output across worker counts. The binary path
// arrives in RLAB_CLI.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    const char* cli = std::getenv("RLAB_CLI");
    if (!cli) {
        std::fprintf(stderr, "RLAB_CLI not set\n");
        return 1;
    }
    const std::string bin = cli;
    const auto dir = std::filesystem::temp_directory_path() / "rlab_cli_smoke";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::string d = dir.string();

    // successful run writes a report and exits 0
    expect(run(bin + " v-eval --out " + d + "/v.json --csv " + d + "/v.csv >/dev/null 2>&1") == 0,
           "v-eval exits 0");
    expect(std::filesystem::exists(d + "/v.json"), "v-eval wrote the JSON report");
    expect(slurp(d + "/v.csv").rfind("param,raw,compensated,error_estimate", 0) == 0,
           "CSV starts with the flat header");

    // invalid sigma/k combination exits 4 and cites the bound
    expect(run(bin + " moments-g --sigma 1.9 --k 2 >/dev/null 2>" + d + "/err.txt") == 4,
           "moments-g with sigma=1.9, k=2 exits 4");
    expect(slurp(d + "/err.txt").find("2/(2^(2k-1)-1)") != std::string::npos,
           "error message cites sigma < 2/(2^(2k-1)-1)");

    // unknown arguments exit nonzero
    expect(run(bin + " count --radii -3 >/dev/null 2>&1") == 4, "negative radius exits 4");

    // gaps-verify documented example
    expect(run(bin + " gaps-verify --nu 1,10,25 --a 1,1,1 --n 2 --alpha 0.5 --out " + d +
               "/gaps.json >/dev/null 2>&1") == 0,
           "gaps-verify documented instance exits 0");
    const auto gaps = slurp(d + "/gaps.json");
    expect(gaps.find("\"experiment\": \"gaps-verify\"") != std::string::npos,
           "gaps report carries the experiment name");

    // determinism: identical config, different worker counts, byte-identical
    // reports apart from the timestamp (which --no-timestamp drops)
    const std::string common =
        " correlate-I --R 40,80 --sigma 0.5 --R0 40 --no-timestamp --out ";
    expect(run(bin + common + d + "/t1.json --threads 1 >/dev/null 2>&1") == 0,
           "correlate-I with --threads 1 exits 0");
    expect(run(bin + common + d + "/t8.json --threads 8 >/dev/null 2>&1") == 0,
           "correlate-I with --threads 8 exits 0");
    expect(slurp(d + "/t1.json") == slurp(d + "/t8.json"),
           "reports for --threads 1 and --threads 8 are byte-identical");

    // sieve cache: second run hits the cached file
    const std::string cache = d + "/sieves";
    expect(run(bin + " count --radii 4 --sieve-dir " + cache + " >/dev/null 2>&1") == 0,
           "count with --sieve-dir exits 0");
    expect(std::filesystem::exists(cache + "/sieve-17.rlab1"),
           "sieve cache file written with the documented name");
    expect(run(bin + " count --radii 4 --sieve-dir " + cache + " >/dev/null 2>&1") == 0,
           "count re-run loads the cached sieve");

    std::printf("%s: cli smoke (%d failures)\n", g_failures == 0 ? "SUCCESS" : "FAILURE",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
