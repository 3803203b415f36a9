// SPDX-License-Identifier: Apache-2.0

// End-to-end checks of the installed command line tool. The binary path
// comes from the build system; every invocation runs through the shell
// with stdout captured to a file.

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("dgl_cli_out_" + std::to_string(counter++));
    const std::string cmd = std::string(DGL_CLI_BIN) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    RunResult r{WEXITSTATUS(rc), slurp(out)};
    fs::remove(out);
    return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

} // namespace

TEST_CASE("cli: gen then diameter prints sqrt(5)") {
    const fs::path g = fs::temp_directory_path() / "dgl_cli_p5.tsv";
    auto gen = run_cli("gen --family path --level 5 -o " + g.string());
    REQUIRE(gen.exit_code == 0);
    const auto diam = run_cli("resistance --graph " + g.string() + " --diameter");
    CHECK(diam.exit_code == 0);
    CHECK(diam.out == "2.2360679775 exact_tree\n");
    fs::remove(g);
}

TEST_CASE("cli: energy of a constant function prints 0") {
    const fs::path g = write_temp("dgl_cli_e.tsv", "0 1 1.0\n1 2 1.0\n");
    const fs::path f = write_temp("dgl_cli_f.tsv", "0 5.5\n1 5.5\n2 5.5\n");
    const auto r = run_cli("energy --graph " + g.string() + " --function " + f.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0\n");
    fs::remove(g);
    fs::remove(f);
}

TEST_CASE("cli: lemma1 worked example") {
    const fs::path g = write_temp("dgl_cli_p2.tsv", "0 1 1.0\n1 2 1.0\n");
    const fs::path m = write_temp("dgl_cli_m.tsv", "0 1\n1 1\n2 1\n");
    const fs::path u = write_temp("dgl_cli_u.tsv", "0\n");
    const auto r = run_cli("lemma1 --graph " + g.string() + " --measure " + m.string() +
                           " --set " + u.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "energy 1\nbound 4\nHOLDS\n");
    fs::remove(g);
    fs::remove(m);
    fs::remove(u);
}

TEST_CASE("cli: exit codes for validation and solver failure") {
    const fs::path bad = write_temp("dgl_cli_bad.tsv", "0 0 1.0\n");
    CHECK(run_cli("resistance --graph " + bad.string() + " --diameter").exit_code == 1);
    fs::remove(bad);

    // witness on a graph with no anchors is a validation error
    const fs::path tiny = write_temp("dgl_cli_tiny.tsv", "0 1 1.0\n");
    CHECK(run_cli("witness --graph " + tiny.string()).exit_code == 1);

    // starved iteration budget with a cyclic free subgraph: solver failure
    // (a cycle with a chord keeps a loop after grounding one node)
    std::string chorded;
    for (int i = 0; i + 1 < 400; ++i)
        chorded += std::to_string(i) + " " + std::to_string(i + 1) + " 1.0\n";
    chorded += "0 399 1.0\n0 200 1.0\n";
    const fs::path cyc = write_temp("dgl_cli_c.tsv", chorded);
    const fs::path pairs = write_temp("dgl_cli_pairs.tsv", "100 300\n");
    const auto starved = run_cli("resistance --graph " + cyc.string() + " --pairs " +
                                 pairs.string() + " --max-iter 2");
    CHECK(starved.exit_code == 2);
    fs::remove(tiny);
    fs::remove(pairs);
    fs::remove(cyc);
}

TEST_CASE("cli: byte-identical reports on repeated runs") {
    const fs::path g = fs::temp_directory_path() / "dgl_cli_t2.tsv";
    REQUIRE(run_cli("gen --family sst --level 2 -o " + g.string()).exit_code == 0);
    // a generation-weighted measure written by hand: 1 at the root, then
    // 2^-gen / sphere
    std::string measure = "0 1\n";
    for (int i = 1; i <= 4; ++i) measure += std::to_string(i) + " 0.125\n";
    for (int i = 5; i <= 68; ++i) measure += std::to_string(i) + " 0.00390625\n";
    const fs::path m = write_temp("dgl_cli_t2m.tsv", measure);

    const auto a = run_cli("net --graph " + g.string() + " --measure " + m.string() +
                           " --epsilon 0.5 --greedy --seed 7");
    const auto b = run_cli("net --graph " + g.string() + " --measure " + m.string() +
                           " --epsilon 0.5 --greedy --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"schema\": \"dgl/1\"") != std::string::npos);
    CHECK(a.out.find("\"sha256\"") != std::string::npos);

    const auto p1 = run_cli("profile --family sst --levels 2,3 --epsilons 0.5 "
                            "--measure-rule geometric:0.5");
    const auto p2 = run_cli("profile --family sst --levels 2,3 --epsilons 0.5 "
                            "--measure-rule geometric:0.5 --threads 4");
    CHECK(p1.exit_code == 0);
    CHECK(p1.out == p2.out); // thread count does not change the bytes
    fs::remove(g);
    fs::remove(m);
}

TEST_CASE("cli: all-pairs and pairs agree; pairs honor --threads") {
    const fs::path g = write_temp("dgl_cli_tri.tsv", "0 1 1.0\n0 2 1.0\n1 2 1.0\n");
    const auto all = run_cli("resistance --graph " + g.string() + " --all-pairs");
    CHECK(all.exit_code == 0);
    CHECK(all.out == "0 1 0.666666666667\n0 2 0.666666666667\n1 2 0.666666666667\n");
    const fs::path pairs = write_temp("dgl_cli_tp.tsv", "0 1\n1 2\n0 2\n");
    const auto p1 = run_cli("resistance --graph " + g.string() + " --pairs " + pairs.string());
    const auto p4 = run_cli("resistance --graph " + g.string() + " --pairs " + pairs.string() +
                            " --threads 4");
    CHECK(p1.exit_code == 0);
    CHECK(p1.out == p4.out);
    CHECK(p1.out.find("0 1 0.666666666667 0.816496580928") == 0);
    fs::remove(g);
    fs::remove(pairs);
}

TEST_CASE("cli: witness profile csv on the path family") {
    const auto r = run_cli("witness-profile --family path --levels 1000,10000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("path,1000,1,1,") != std::string::npos);
    CHECK(r.out.find("path,10000,1;2,2,") != std::string::npos);
}

TEST_CASE("cli: kernels flag selects the table; --square squares pointwise") {
    const fs::path g = write_temp("dgl_cli_k.tsv", "0 1 2.0\n1 2 3.0\n");
    const fs::path f = write_temp("dgl_cli_kf.tsv", "0 0\n1 1\n2 0\n");
    const auto a = run_cli("energy --graph " + g.string() + " --function " + f.string() +
                           " --kernels scalar");
    CHECK(a.exit_code == 0);
    CHECK(a.out == "5\n");
    const auto b = run_cli("energy --graph " + g.string() + " --function " + f.string() +
                           " --kernels auto");
    CHECK(b.out == "5\n");
    // 0/1 functions are fixed by squaring
    const auto sq = run_cli("energy --graph " + g.string() + " --function " + f.string() +
                            " --square");
    CHECK(sq.out == "5\n");
    fs::remove(g);
    fs::remove(f);
}

TEST_CASE("cli: json report variants") {
    const auto pj = run_cli("profile --family sst --levels 2 --epsilons 0.5 "
                            "--measure-rule geometric:0.5 --format json");
    CHECK(pj.exit_code == 0);
    CHECK(pj.out.find("\"schema\": \"dgl/1\"") != std::string::npos);
    CHECK(pj.out.find("\"profile\"") != std::string::npos);
    CHECK(pj.out.find("\"net_size_greedy\"") != std::string::npos);

    const auto wj = run_cli("witness-profile --family star --levels 5 --format json");
    CHECK(wj.exit_code == 0);
    CHECK(wj.out.find("compactness-consistent") != std::string::npos);
}
