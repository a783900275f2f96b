#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dgt/cli.hpp"
#include "dgt/errors.hpp"
#include "dgt/families.hpp"
#include "dgt/io.hpp"
#include "support.hpp"

using namespace dgt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

auto cli(std::vector<std::string> args) -> Outcome {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("dgt_cli_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }
    Scratch(const Scratch&) = delete;
    auto operator=(const Scratch&) -> Scratch& = delete;

    [[nodiscard]] auto path(const std::string& name) const -> std::string { return (dir_ / name).string(); }
    auto write(const std::string& name, const std::string& text) const -> std::string {
        std::ofstream(path(name)) << text;
        return path(name);
    }
    [[nodiscard]] auto read(const std::string& name) const -> std::string {
        std::ifstream in(path(name));
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

private:
    fs::path dir_;
};

// Runs the installed binary in a fresh process and returns its exit code.
auto fresh(const std::string& args) -> int {
    const int status = std::system((std::string(DGT_BINARY) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

auto same_labelled(const Digraph& a, const Digraph& b) -> bool {
    if (!(a == b)) {
        return false;
    }
    for (VertexId v : a.vertices()) {
        if (a.label(v) != b.label(v)) {
            return false;
        }
    }
    return true;
}

auto V(std::uint32_t i) -> VertexId { return VertexId{i}; }

} // namespace

TEST_CASE("parse_digraph examples") {
    const Digraph two = parse_digraph("a b\nb a");
    CHECK(two.vertex_count() == 2);
    CHECK(two.edge_count() == 2);
    CHECK(two.has_edge(*two.find("a"), *two.find("b")));
    CHECK(two.has_edge(*two.find("b"), *two.find("a")));

    const Digraph three = parse_digraph("# comment\nv z\na b");
    CHECK(three.vertex_count() == 3);
    CHECK(three.edge_count() == 1);
    CHECK(three.label(V(0)) == "z");
    CHECK(three.label(V(1)) == "a");

    std::vector<std::string> warnings;
    const Digraph dup = parse_digraph("a b  # trailing\n\na b\n", &warnings);
    CHECK(dup.edge_count() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("line 3") != std::string::npos);

    try {
        parse_digraph("a b\na b c\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_digraph("a b\nc c\n"), LoopError);
    CHECK_THROWS_AS(parse_digraph("v\n"), ParseError);
}

TEST_CASE("serialize and parse are inverse on random digraphs") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const Digraph g = dgt::testing::random_digraph(rng() % 10, 0.3, rng);
        const std::string text = serialize_digraph(g);
        const Digraph back = parse_digraph(text);
        CHECK(same_labelled(g, back));
        CHECK(serialize_digraph(back) == text);
        CHECK(fingerprint(back) == fingerprint(g));
    }
    Digraph bad;
    bad.add_vertex("two words");
    CHECK_THROWS_AS(serialize_digraph(bad), PreconditionViolated);
}

TEST_CASE("fingerprints ignore line order and see edge changes") {
    const Digraph a = parse_digraph("x y\ny z\nz x\n");
    const Digraph b = parse_digraph("z x\nx y\ny z\n");
    const Digraph c = parse_digraph("x y\ny z\nx z\n");
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK_FALSE(fingerprint(a) == fingerprint(c));
    CHECK(fingerprint(a).hash.size() == 16);
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("certificates round-trip bit-exactly and verify") {
    auto round = [](const Certificate& c) {
        const std::string text = serialize_certificate(c);
        CHECK(serialize_certificate(parse_certificate(text)) == text);
        return parse_certificate(text);
    };
    SUBCASE("cycle rank") {
        const Digraph g = gen_cycle_chain(8).graph;
        const auto r = cycle_rank(g);
        const auto c = round(make_certificate(CertificateKind::CrDecomposition, g, encode_cr(g, r.certificate)));
        CHECK(decode_cr(g, c.payload) == r.certificate);
        CHECK(verify_certificate(g, c).valid);
        auto tampered = c;
        tampered.payload["height"] = 1;
        CHECK_FALSE(verify_certificate(g, tampered).valid);
        tampered = c;
        tampered.payload["parent"] = Json::array();
        CHECK_FALSE(verify_certificate(g, tampered).valid);
    }
    SUBCASE("model") {
        const auto x = extract_from_grid(2, GridTarget::Chain);
        const auto c =
            round(make_certificate(CertificateKind::BfModel, x.host, encode_model(x.pattern, x.host, x.model)));
        const Digraph pattern = decode_model_pattern(c.payload);
        CHECK(same_labelled(pattern, x.pattern));
        CHECK(decode_model(pattern, x.host, c.payload) == x.model);
        CHECK(verify_certificate(x.host, c).valid);
        auto tampered = c;
        tampered.payload["edge_images"] = Json::array();
        CHECK_FALSE(verify_certificate(x.host, tampered).valid);
        CHECK_FALSE(verify_certificate(gen_cylindrical_grid(3), c).valid);
    }
    SUBCASE("directed tree decomposition") {
        const Digraph g = gen_ladder(3);
        const auto d = dtd_from_cr_decomposition(g, cycle_rank(g).certificate);
        const auto c = round(make_certificate(CertificateKind::Dtd, g, encode_dtd(g, d)));
        CHECK(decode_dtd(g, c.payload).nodes == d.nodes);
        const auto check = verify_certificate(g, c);
        CHECK(check.valid);
        CHECK(check.detail.find("width") != std::string::npos);
        auto tampered = c;
        for (auto& n : tampered.payload["nodes"]) {
            n["guard"] = Json::array();
        }
        tampered.payload.erase("width");
        CHECK_FALSE(verify_certificate(g, tampered).valid);
    }
    SUBCASE("chain decomposition") {
        const auto m = gen_M(3, 4);
        const auto c = round(make_certificate(CertificateKind::ChainDecomposition, m.graph,
                                              encode_chain_decomposition(m.decomposition)));
        const auto t = decode_chain_decomposition(c.payload);
        CHECK(t.weight_vector == m.decomposition.weight_vector);
        CHECK(t.full_height == 3);
        CHECK(verify_certificate(m.graph, c).valid);
        auto tampered = c;
        tampered.payload["full_height"] = 2;
        CHECK_FALSE(verify_certificate(m.graph, tampered).valid);
        const auto tc = tree_chain_decomposition(2);
        const Digraph tg = gen_tree_chain(2).graph;
        const auto tcheck = verify_certificate(
            tg, make_certificate(CertificateKind::ChainDecomposition, tg, encode_chain_decomposition(tc)));
        INFO(tcheck.detail);
        CHECK(tcheck.valid);
    }
    SUBCASE("structure descriptor") {
        std::mt19937_64 rng(5);
        const auto f = random_mixed_chain({1, {1, 0}, false, true}, rng);
        const auto c = round(
            make_certificate(CertificateKind::StructureDescriptor, f.host, encode_structure(f.host, f.chain)));
        CHECK(std::get<MixedChain>(decode_structure(f.host, c.payload)) == f.chain);
        CHECK(verify_certificate(f.host, c).valid);
        auto tampered = c;
        tampered.payload["value"]["pj"] = Json::array();
        CHECK_FALSE(verify_certificate(f.host, tampered).valid);
    }
    SUBCASE("malformed documents") {
        CHECK_THROWS_AS(parse_certificate("{\n\"schema_version\": 1,\n oops"), ParseError);
        CHECK_THROWS_AS(parse_certificate(R"({"schema_version": 9, "kind": "dtd", "graph": {}, "payload": {}})"),
                        ParseError);
        CHECK_THROWS_AS(parse_certificate(R"({"schema_version": 1, "kind": "nope"})"), ParseError);
        const Digraph g = parse_digraph("a b\nb a\n");
        auto c = make_certificate(CertificateKind::Dtd, g, Json{{"nodes", Json::array({{{"parent", nullptr}}})}});
        CHECK_FALSE(verify_certificate(g, c).valid);
        c.payload = Json{{"nodes", Json::array({{{"parent", nullptr}, {"bag", {"a", "q"}}, {"guard", Json::array()}}})}};
        CHECK(verify_certificate(g, c).detail.find("unknown vertex label 'q'") != std::string::npos);
    }
}

TEST_CASE("run: documented examples and exit codes") {
    Scratch s;
    const auto cc8 = s.write("cc8.el", serialize_digraph(gen_cycle_chain(8).graph));
    const auto cc3 = s.write("cc3.el", serialize_digraph(gen_cycle_chain(3).graph));
    const auto l4 = s.write("l4.el", serialize_digraph(gen_ladder(4)));
    SUBCASE("rank") {
        const auto r = cli({"rank", cc8, "--cert", s.path("cc8.json")});
        CHECK(r.code == 0);
        CHECK(r.out == "3\n");
        CHECK(cli({"verify", "cr", cc8, s.path("cc8.json")}).code == 0);
        CHECK(cli({"verify", "dtd", cc8, s.path("cc8.json")}).code == 1);
    }
    SUBCASE("minor") {
        const auto r = cli({"minor", cc3, l4});
        CHECK(r.code == 1);
        CHECK(r.out.starts_with("NotContained"));
        const auto found = cli({"minor", s.write("l2.el", serialize_digraph(gen_ladder(2))), l4, "--model",
                                s.path("m.json")});
        CHECK(found.code == 0);
        CHECK(found.out == "Found\n");
        CHECK(cli({"verify", "model", l4, s.path("m.json")}).code == 0);
        const auto grid = s.write("grid3.el", serialize_digraph(gen_cylindrical_grid(3)));
        CHECK(cli({"minor", s.path("l2.el"), grid, "--budget", "5"}).code == 3);
    }
    SUBCASE("gen grid as dot") {
        const auto r = cli({"gen", "grid", "4", "--format", "dot"});
        CHECK(r.code == 0);
        const Digraph g = gen_cylindrical_grid(4);
        CHECK(r.out.starts_with("digraph"));
        for (const Edge& e : g.edges()) {
            CHECK(r.out.find("\"" + g.label(e.tail) + "\" -> \"" + g.label(e.head) + "\";") != std::string::npos);
        }
        CHECK(r.out == to_dot(g, "grid4"));
    }
    SUBCASE("gen edge lists parse back to the family") {
        for (const std::string family : {"ladder", "cyclechain", "treechain", "grid"}) {
            const auto r = cli({"gen", family, "3"});
            REQUIRE(r.code == 0);
            CHECK(parse_digraph(r.out).vertex_count() > 0);
        }
        CHECK(same_labelled(parse_digraph(cli({"gen", "treechain", "3"}).out), gen_tree_chain(3).graph));
    }
    SUBCASE("seeded output is deterministic") {
        const auto a = cli({"gen", "m", "3", "--seed", "9"});
        const auto b = cli({"gen", "m", "3", "--seed", "9"});
        CHECK(a.out == b.out);
        CHECK(a.err.find("seed: 9") != std::string::npos);
        CHECK(cli({"gen", "rtc", "3", "--seed", "4"}).out == cli({"gen", "rtc", "3", "--seed", "4"}).out);
        setenv("TOOLKIT_SEED", "9", 1);
        CHECK(cli({"gen", "m", "3"}).out == a.out);
        unsetenv("TOOLKIT_SEED");
    }
    SUBCASE("recipes") {
        const auto recipe = s.write("r.json", R"({"depth": 1, "a": [3]})");
        const auto r = cli({"gen", "rtc", "1", "--recipe", recipe});
        CHECK(r.code == 0);
        CHECK(parse_digraph(r.out).vertex_count() == 4);
        CHECK(cli({"gen", "rtc", "2", "--recipe", recipe}).code == 2);
        CHECK(cli({"gen", "rtc", "1", "--recipe", s.write("bad.json", R"({"depth": 1, "a": [0]})")}).code == 2);
    }
    SUBCASE("extract bundles verify") {
        for (const std::string kind : {"grid-chain", "grid-ladder", "tc"}) {
            const auto dir = s.path(kind);
            const auto r = cli({"extract", kind, "2", "--out", dir, "--seed", "3"});
            REQUIRE(r.code == 0);
            CHECK(fs::exists(dir + "/script.txt"));
            CHECK(cli({"verify", "model", dir + "/host.el", dir + "/model.json"}).code == 0);
        }
    }
    SUBCASE("wcol") {
        CHECK(cli({"wcol", cc8, "--k", "inf"}).out == "4\n");
        CHECK(cli({"wcol", cc8, "--k", "inf", "--exact"}).out.starts_with("4\n"));
        CHECK(cli({"wcol", cc8, "--k", "many"}).code == 2);
        CHECK(cli({"wcol", cc8, "--k", "inf", "--exact", "--cap", "4"}).code == 3);
    }
    SUBCASE("dtd and ep") {
        const auto tri = s.write("tri.el", "a b\nb c\nc a\nd e\ne f\nf d\nc d\n");
        CHECK(cli({"dtd", tri, "--out", s.path("d.json")}).code == 0);
        CHECK(cli({"verify", "dtd", tri, s.path("d.json")}).code == 0);
        const auto two = cli({"ep", tri, "--dtd", s.path("d.json"), "--family", "cycles", "-k", "2"});
        CHECK(two.code == 0);
        CHECK(two.out.starts_with("Packing 2\n"));
        CHECK(two.out.find("a b c\n") != std::string::npos);
        CHECK(two.out.find("d e f\n") != std::string::npos);
        CHECK(two.out.ends_with("verified\n"));
        const auto three = cli({"ep", tri, "--dtd", s.path("d.json"), "--family", "cycles", "-k", "3"});
        CHECK(three.code == 0);
        CHECK(three.out.starts_with("Cover"));
        const auto pattern = s.write("c3.el", "x y\ny z\nz x\n");
        CHECK(cli({"ep", tri, "--dtd", s.path("d.json"), "--family", "pattern:" + pattern, "-k", "2"}).code == 0);
        CHECK(cli({"dtd", tri, "--out", s.path("s.json"), "--search", "20", "--seed", "2"}).code == 0);
        CHECK(cli({"verify", "dtd", tri, s.path("s.json")}).code == 0);
        CHECK(cli({"ep", tri, "--dtd", s.path("d.json"), "--family", "paths", "-k", "2"}).code == 2);
    }
    SUBCASE("usage and input errors") {
        CHECK(cli({}).code == 2);
        CHECK(cli({"bogus"}).code == 2);
        CHECK(cli({"rank"}).code == 2);
        CHECK(cli({"rank", s.path("missing.el")}).code == 2);
        const auto loop = cli({"rank", s.write("loop.el", "a b\nb b\n")});
        CHECK(loop.code == 2);
        CHECK(loop.err.find("line 2") != std::string::npos);
        CHECK(cli({"verify", "cr", cc8, s.write("junk.json", "not json")}).code == 2);
        CHECK(cli({"gen", "grid", "3", "--format", "svg"}).code == 2);
        CHECK(cli({"--help"}).code == 0);
    }
}

TEST_CASE("every emitted certificate verifies in a fresh process") {
    Scratch s;
    const auto cc8 = s.write("cc8.el", serialize_digraph(gen_cycle_chain(8).graph));
    REQUIRE(cli({"rank", cc8, "--cert", s.path("cr.json")}).code == 0);
    CHECK(fresh("verify cr " + cc8 + " " + s.path("cr.json")) == 0);

    REQUIRE(cli({"dtd", cc8, "--out", s.path("dtd.json")}).code == 0);
    CHECK(fresh("verify dtd " + cc8 + " " + s.path("dtd.json")) == 0);

    const auto m = cli({"gen", "m", "3", "--seed", "11", "--cert", s.path("chain.json")});
    REQUIRE(m.code == 0);
    const auto m3 = s.write("m3.el", m.out);
    CHECK(fresh("verify chain " + m3 + " " + s.path("chain.json")) == 0);

    const auto l2 = s.write("l2.el", serialize_digraph(gen_ladder(2)));
    const auto l4 = s.write("l4.el", serialize_digraph(gen_ladder(4)));
    REQUIRE(cli({"minor", l2, l4, "--model", s.path("model.json")}).code == 0);
    CHECK(fresh("verify model " + l4 + " " + s.path("model.json")) == 0);

    REQUIRE(cli({"extract", "grid-ladder", "2", "--out", s.path("ex")}).code == 0);
    CHECK(fresh("verify model " + s.path("ex/host.el") + " " + s.path("ex/model.json")) == 0);

    // The fresh process also reports mismatches.
    CHECK(fresh("verify cr " + l4 + " " + s.path("cr.json")) == 1);
    CHECK(fresh("rank " + cc8) == 0);
}
