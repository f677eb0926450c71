// CLI pipeline: config validation, exit codes, report files, determinism,
// and a smoke test of the installed binary.
#include <catch2/catch_amalgamated.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ramnet/cli_app.hpp"

using namespace ramnet::cli;
using ramnet::io::json;
namespace fs = std::filesystem;

namespace {

RunConfig base(const std::string& cmd) {
    RunConfig c;
    c.command = cmd;
    return c;
}

std::string verr(const RunConfig& c) {
    auto e = validate(c);
    return e ? *e : "";
}

int run(const RunConfig& c, std::string* text = nullptr) {
    std::ostringstream out;
    int rc = execute(c, out);
    if (text) *text = out.str();
    return rc;
}

// Command output may carry a human-readable preamble before the JSON document.
json parse_doc(const std::string& text) {
    auto pos = text.find('{');
    REQUIRE(pos != std::string::npos);
    return json::parse(text.substr(pos));
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "ramnet_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

size_t count_lines(const std::string& s) {
    return static_cast<size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("validate rejects malformed configs with specific messages") {
    auto c = base("frobnicate");
    c.p = 5;
    CHECK(verr(c) == "unknown command");

    c = base("build");
    c.field = "R";
    c.p = 5;
    CHECK(verr(c) == "field must be Q or Q_sqrt5");

    c = base("scan");
    c.p = 9;
    c.limit = 100;
    CHECK(verr(c) == "p must be a prime");
    c.p = 0;
    CHECK(verr(c) == "p must be a prime");

    c.p = 7;
    CHECK(verr(c) == "field Q requires p = 1 mod 4");

    c.field = "Q_sqrt5";
    c.p = 13;
    CHECK(verr(c) == "field Q_sqrt5 requires p = 1,9 mod 20");
    c.p = 41;
    CHECK(verr(c) == "field Q_sqrt5 requires tau to be a square mod p");
    c.p = 29;
    c.q = 13;
    CHECK(verr(c) == "--q applies to field Q only");

    c = base("scan");
    c.p = 5;
    c.limit = 100;
    c.q = 7;
    CHECK(verr(c) == "q must be a prime = 1 mod 4");
    c.q = 15;
    CHECK(verr(c) == "q must be a prime = 1 mod 4");
    c.q = 0;
    c.p = 13;
    c.q = 13;
    CHECK(verr(c) == "q must differ from p");

    c = base("scan");
    c.p = 5;
    c.limit = 1;
    CHECK(verr(c) == "scan needs --limit >= 2");
    c.limit = 2;
    CHECK(verr(c).empty());
}

TEST_CASE("validate guards the modulus") {
    auto c = base("build");
    c.p = 5;
    c.N = 15;
    CHECK(verr(c) == "N must be an odd prime");
    c.N = 2;
    CHECK(verr(c) == "N must be an odd prime");
    c.N = 5;
    CHECK(verr(c) == "N must be coprime to p*q");
    c = base("build");
    c.p = 17;
    c.q = 13;
    c.N = 13;
    CHECK(verr(c) == "N must be coprime to p*q");
    c = base("build");
    c.p = 5;
    c.N = 163;  // |PSL(2,163)| = 2,165,292
    CHECK(verr(c) == "group PSL(2,N) too large for this tool");
    c.N = 7;
    CHECK(verr(c) == "field Q requires N = 1 mod 4");
    c.N = 13;
    CHECK(verr(c) == "p must be a nonzero square mod N");
    c.p = 17;
    c.q = 5;
    CHECK(verr(c) == "q must be a nonzero square mod N");
    c.q = 0;
    CHECK(verr(c).empty());

    c = base("build");
    c.field = "Q_sqrt5";
    c.p = 29;
    c.N = 41;
    CHECK(verr(c) == "N fails the selection criterion for this p");
    c.N = 509;  // scan-valid pair, but the group is out of desk range
    CHECK(verr(c) == "group PSL(2,N) too large for this tool");
    c.p = 509;
    c.N = 29;
    CHECK(verr(c).empty());
}

TEST_CASE("validate guards protocol parameters") {
    auto c = base("protocol");
    c.p = 29;
    c.N = 5;
    CHECK(verr(c) == "protocol needs two colors (--q)");
    c.q = 41;
    CHECK(verr(c).empty());
    c.shares = 0;
    CHECK(verr(c) == "--shares must be in [1, 64]");
    c.shares = 65;
    CHECK(verr(c) == "--shares must be in [1, 64]");
    c.shares = 2;
    c.walk_len = 0;
    CHECK(verr(c) == "--walk-len must be in [1, 4096]");
    c.walk_len = 4097;
    CHECK(verr(c) == "--walk-len must be in [1, 4096]");
}

TEST_CASE("execute surfaces validation failures as exit code 2") {
    auto c = base("scan");
    c.p = 10;
    c.limit = 100;
    std::string text;
    CHECK(run(c, &text) == kInvalid);
    CHECK(text == "error: p must be a prime\n");
}

TEST_CASE("scan over Q lists the valid moduli") {
    auto c = base("scan");
    c.p = 5;
    c.limit = 100;
    std::string text;
    REQUIRE(run(c, &text) == kOk);
    auto doc = parse_doc(text);
    CHECK(doc["kind"] == "scan");
    CHECK(doc["field"] == "Q");
    CHECK(doc["valid_N"] == json::array({29, 41, 61, 89}));

    // Two primes: both must be nonzero squares mod N.
    c.q = 13;
    c.limit = 40;
    REQUIRE(run(c, &text) == kOk);
    doc = parse_doc(text);
    CHECK(doc["valid_N"] == json::array({29}));
}

TEST_CASE("scan over Q(sqrt5) emits certificates") {
    auto c = base("scan");
    c.field = "Q_sqrt5";
    c.p = 29;
    c.limit = 510;
    std::string text;
    REQUIRE(run(c, &text) == kOk);
    auto doc = parse_doc(text);
    CHECK(doc["kind"] == "scan");
    CHECK(doc["count"] == 1);
    CHECK(doc["certificates"][0]["N"] == 509);
    CHECK(doc["certificates"][0]["pell"]["a"] == 14);
    CHECK(doc["certificates"][0]["pell"]["b"] == 2);
    CHECK(doc["certificates"][0]["tau_is_square"] == true);

    c.limit = 100;  // no valid modulus that small
    CHECK(run(c, &text) == kEmpty);
    CHECK(parse_doc(text)["count"] == 0);
}

TEST_CASE("build emits a summary and report files") {
    auto dir = temp_dir();
    auto c = base("build");
    c.p = 17;
    c.N = 13;
    c.out_prefix = (dir / "g17_13").string();
    std::string text;
    REQUIRE(run(c, &text) == kOk);
    auto doc = parse_doc(text);
    CHECK(doc["kind"] == "graph");
    CHECK(doc["vertices"] == 1092);
    CHECK(doc["connected"] == true);
    CHECK(doc["bipartite"] == false);
    CHECK(doc["diameter"] == 4);
    CHECK(doc["girth"] == 3);
    CHECK(doc["colors"][0]["name"] == "p17");
    CHECK(doc["generators"]["count"] == 18);

    // The .json file carries exactly the printed document.
    CHECK(slurp(dir / "g17_13.json") == text);
    auto edges = slurp(dir / "g17_13.edges");
    CHECK(count_lines(edges) == 9828);  // 1092 * 18 / 2
    auto dot = slurp(dir / "g17_13.dot");
    CHECK(dot.rfind("graph cayley {", 0) == 0);
    CHECK(dot.find("[color=red]") != std::string::npos);
}

TEST_CASE("build constructs the Hilbert graph end to end") {
    auto c = base("build");
    c.field = "Q_sqrt5";
    c.p = 509;
    c.N = 29;
    std::string text;
    REQUIRE(run(c, &text) == kOk);
    auto doc = parse_doc(text);
    CHECK(doc["vertices"] == 12180);
    CHECK(doc["connected"] == true);
    CHECK(doc["colors"][0]["name"] == "pi");
    CHECK(doc["colors"][1]["name"] == "pi_bar");
    CHECK(doc["red_generators"]["count"] == 510);
    CHECK(doc["blue_generators"]["count"] == 510);
}

TEST_CASE("verify passes on the two-color bench and is deterministic") {
    auto dir = temp_dir();
    auto c = base("verify");
    c.p = 29;
    c.q = 41;
    c.N = 5;
    c.out_prefix = (dir / "v29_41_5").string();
    std::string first;
    REQUIRE(run(c, &first) == kOk);
    auto doc = parse_doc(first);
    CHECK(doc["verified"] == true);
    CHECK(doc["square_property"]["ok"] == true);
    CHECK(doc["square_property"]["table_mismatches"] == 0);
    CHECK(doc["square_property"]["search_mismatches"] == 0);
    CHECK(doc["square_property"]["walk_audit"]["missing"] == 0);
    REQUIRE(doc["spectral"].size() == 2);
    for (const auto& rep : doc["spectral"]) {
        CHECK(rep["method"] == "dense");
        CHECK(rep["verdict"] == true);
        CHECK(rep["n"] == 60);
    }
    CHECK(doc["spectral"][0]["r"] == 30);
    CHECK(doc["spectral"][1]["r"] == 42);

    CHECK(slurp(dir / "v29_41_5.verify.json") == first);
    CHECK(count_lines(slurp(dir / "v29_41_5.color0.spectrum.csv")) == 61);  // header + 60
    CHECK(count_lines(slurp(dir / "v29_41_5.color1.spectrum.csv")) == 61);

    std::string second;
    c.out_prefix.clear();
    REQUIRE(run(c, &second) == kOk);
    CHECK(second == first);  // byte-identical rerun
}

TEST_CASE("protocol runs a send plus dispersal and reports ok") {
    auto dir = temp_dir();
    auto c = base("protocol");
    c.p = 29;
    c.q = 41;
    c.N = 5;
    c.shares = 5;
    c.walk_len = 32;
    c.out_prefix = (dir / "proto").string();
    std::string text;
    REQUIRE(run(c, &text) == kOk);
    auto doc = parse_doc(text);
    CHECK(doc["ok"] == true);
    CHECK(doc["transmission"]["accepted"] == true);
    CHECK(doc["transmission"]["src"] == 0);
    CHECK(doc["transmission"]["dst"] == 59);
    CHECK(doc["transmission"]["payload_bytes"] == 256);
    CHECK(doc["dispersal"]["shares"] == 5);
    CHECK(doc["dispersal"]["reconstructed"] == true);
    CHECK(slurp(dir / "proto.protocol.json") == text);

    // Payload from a file.
    auto payload_path = dir / "payload.bin";
    std::ofstream(payload_path, std::ios::binary) << "hello ramnet";
    c.out_prefix.clear();
    c.payload_path = payload_path.string();
    REQUIRE(run(c, &text) == kOk);
    CHECK(parse_doc(text)["transmission"]["payload_bytes"] == 12);

    c.payload_path = (dir / "missing.bin").string();
    CHECK(run(c, &text) == kInvalid);
    CHECK(text.find("cannot read payload file") != std::string::npos);
}

TEST_CASE("installed binary honors flags and exit codes") {
    const std::string bin = RAMNET_CLI_PATH;
    auto shell = [&](const std::string& args) {
        int rc = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        REQUIRE(rc != -1);
        REQUIRE(WIFEXITED(rc));
        return WEXITSTATUS(rc);
    };
    CHECK(shell("scan --field Q --p 5 --limit 100") == kOk);
    CHECK(shell("scan --field Q_sqrt5 --p 29 --limit 100") == kEmpty);
    CHECK(shell("scan --field Q --p 10 --limit 100") == kInvalid);
    CHECK(shell("scan --p 5") == kInvalid);           // missing required --limit
    CHECK(shell("frobnicate --p 5") == kInvalid);     // unknown subcommand
    CHECK(shell("") == kInvalid);                     // missing subcommand
    CHECK(shell("verify --p 29 --q 41 --N 5") == kOk);
    CHECK(shell("protocol --p 29 --q 41 --N 5 --shares 3") == kOk);
}
