#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrg/cli.hpp"
#include "qrg/errors.hpp"
#include "qrg/groupspec.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out; // contents of the --out file ("" if none was written)
};

// Runs the command line in-process, routing the report to a scratch file.
CliResult run_cli(std::vector<std::string> args, bool add_out = true) {
    static int counter = 0;
    const std::string path = "/tmp/qrg_cli_unit_" + std::to_string(counter++) + ".out";
    std::remove(path.c_str());
    if (add_out) {
        args.push_back("--out");
        args.push_back(path);
    }
    std::vector<const char*> argv;
    argv.push_back("qrg");
    for (const std::string& a : args) argv.push_back(a.c_str());
    CliResult r;
    r.code = qrg::cli_main(static_cast<int>(argv.size()), argv.data());
    std::ifstream in(path, std::ios::binary);
    if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        r.out = ss.str();
    }
    std::remove(path.c_str());
    return r;
}

} // namespace

TEST_CASE("group spec strings round-trip through parse and print") {
    const char* specs[] = {"PSL(2,7)",  "SL(4,3)", "SU(3,2)", "PSU(3,3)",
                           "Alt(5)",    "Sym(6)",  "C(12)",   "D(9)",
                           "table:fixtures/q8.txt"};
    for (const char* s : specs) {
        CAPTURE(s);
        const qrg::GroupSpec spec = qrg::parse_group_spec(s);
        CHECK(qrg::print_group_spec(spec) == s);
        CHECK(qrg::print_group_spec(qrg::parse_group_spec(qrg::print_group_spec(spec))) == s);
    }
    CHECK_THROWS_WITH_AS(qrg::parse_group_spec("PSL(2,6)"),
                         doctest::Contains("not a prime power"), qrg::InputError);
    CHECK_THROWS_AS(qrg::parse_group_spec("C(0)"), qrg::InputError);
    CHECK_THROWS_AS(qrg::parse_group_spec("Foo(3)"), qrg::InputError);
    CHECK_THROWS_AS(qrg::parse_group_spec("PSL(2,7) junk"), qrg::InputError);
    CHECK_THROWS_AS(qrg::parse_group_spec("table:"), qrg::InputError);
}

TEST_CASE("k subcommand reports the minimal nontrivial degree") {
    const CliResult r = run_cli({"k", "PSL(2,7)"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["subcommand"] == "k");
    CHECK(doc["inputs"]["group"] == "PSL(2,7)");
    CHECK(doc["results"]["k"] == 3);
    CHECK(doc["results"]["n"] == 168);
    CHECK(doc["results"]["degrees"] == json::array({1, 3, 3, 6, 7, 8}));
    CHECK(doc["provenance"]["seed"] == 0);
    CHECK(doc["provenance"]["schema_version"] == 1);
}

TEST_CASE("describe handles the trivial group") {
    const CliResult r = run_cli({"describe", "C(1)"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["results"]["order"] == 1);
    CHECK(doc["results"]["classes"] == 1);
    CHECK(doc["results"]["abelian"] == true);
    CHECK(doc["results"]["exponent"] == 1);
}

TEST_CASE("bad inputs exit with code 2") {
    CHECK(run_cli({"k", "PSL(2,6)"}).code == 2);
    CHECK(run_cli({"describe", "C(0)"}).code == 2);
    CHECK(run_cli({"nosuchcommand"}).code == 2);
    CHECK(run_cli({"k"}).code == 2);                       // missing group
    CHECK(run_cli({"k", "Alt(5)", "--format", "tsv"}).code == 2); // tsv is chartab-only
    CHECK(run_cli({"mix", "C(12)", "1,5"}).code == 2);            // not symmetric
    CHECK(run_cli({"cover", "Sym(4)", "random:5:1", "--rule", "psl"}).code == 2);
    CHECK(run_cli({"word", "values", "Alt(5)", "x1 x1^-1"}).code == 2);
}

TEST_CASE("enumeration caps exit with code 3") {
    CHECK(run_cli({"describe", "Sym(25)"}).code == 3);
    CHECK(run_cli({"chartab", "PSU(3,4)", "--cap-enum", "1000"}).code == 3);
}

TEST_CASE("chartab emits a well-formed tsv table") {
    const CliResult r = run_cli({"chartab", "Alt(5)", "--format", "tsv"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int header = 0, rows = 0;
    std::string trivial_row;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) ++header;
        if (line.rfind("chi", 0) == 0) {
            ++rows;
            if (line.rfind("chi0\t", 0) == 0) trivial_row = line;
        }
    }
    CHECK(header >= 3); // group banner, class sizes, class orders
    CHECK(rows == 5);
    CHECK(trivial_row == "chi0\t1\t1\t1\t1\t1");
}

TEST_CASE("reports are byte-identical across reruns and worker counts") {
    const std::vector<std::string> base = {"mix", "PSL(2,7)", "randsym:48:7",
                                           "--seed", "11"};
    const CliResult a = run_cli(base);
    REQUIRE(a.code == 0);

    std::vector<std::string> again = base;
    const CliResult b = run_cli(again);
    CHECK(a.out == b.out);

    std::vector<std::string> threaded = base;
    threaded.push_back("--workers");
    threaded.push_back("4");
    const CliResult c = run_cli(threaded);
    CHECK(a.out == c.out);

    const json doc = json::parse(a.out);
    CHECK(doc["results"]["bound_holds"] == true);
    CHECK(doc["results"]["n"] == 168);
}

TEST_CASE("word values echoes canonical words and the exact census") {
    const CliResult r = run_cli({"word", "values", "Alt(5)", "x1^2", "[x1,x2]"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["results"]["words"] == json::array({"x1^2", "x1^-1 x2^-1 x1 x2"}));
    CHECK(doc["results"]["size"] == 45);
    CHECK(doc["results"]["exact"] == true);
}

TEST_CASE("profile collects the quasirandomness summary") {
    const CliResult r = run_cli({"profile", "PSL(2,7)"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["results"]["k"] == 3);
    CHECK(doc["results"]["min_index"] == 7);
    CHECK(doc["results"]["perfect"] == true);
    CHECK(doc["results"]["product_free_found"] == 24);
}

TEST_CASE("help exits cleanly without a report") {
    const CliResult r = run_cli({"--help"}, /*add_out=*/false);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
}
