#include "dgt/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "dgt/coloring.hpp"
#include "dgt/cycle_rank.hpp"
#include "dgt/decompositions.hpp"
#include "dgt/errors.hpp"
#include "dgt/families.hpp"
#include "dgt/io.hpp"
#include "dgt/minors.hpp"

namespace dgt {

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kIndeterminate = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

auto read_file(const std::string& path) -> std::string {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw UsageError("cannot write " + path);
    }
}

auto load_graph(const std::string& path, std::ostream& err) -> Digraph {
    std::vector<std::string> warnings;
    try {
        Digraph g = parse_digraph(read_file(path), &warnings);
        for (const auto& w : warnings) {
            err << "warning: " << path << ": " << w << "\n";
        }
        return g;
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const LoopError& e) {
        throw LoopError(path + ": " + e.what());
    }
}

auto load_certificate(const std::string& path) -> Certificate {
    try {
        return parse_certificate(read_file(path));
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Explicit --seed wins, then TOOLKIT_SEED, then 1. The choice is logged.
auto resolve_seed(const std::optional<std::uint64_t>& flag, std::ostream& err) -> std::uint64_t {
    std::uint64_t seed = 1;
    if (flag) {
        seed = *flag;
    } else if (const char* env = std::getenv("TOOLKIT_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("TOOLKIT_SEED is not a number: ") + env);
        }
    }
    err << "seed: " << seed << "\n";
    return seed;
}

auto load_recipe(const std::string& path) -> TreeChainRecipe {
    try {
        const Json j = Json::parse(read_file(path));
        TreeChainRecipe r{j.at("depth").get<std::size_t>(), j.at("a").get<std::vector<std::size_t>>()};
        if (!r.valid()) {
            throw UsageError(path + ": recipe needs 2^depth - 1 positive values of a");
        }
        return r;
    } catch (const Json::exception& e) {
        throw UsageError(path + ": malformed recipe: " + e.what());
    }
}

auto labels_of(const Digraph& g, const VertexSet& vs) -> std::string {
    std::vector<std::string> names;
    for (VertexId v : vs) {
        names.push_back(g.label(v));
    }
    std::sort(names.begin(), names.end());
    std::string out;
    for (const auto& n : names) {
        out += (out.empty() ? "" : " ") + n;
    }
    return out;
}

auto emit_graph(const Digraph& g, const std::string& format, std::string_view name) -> std::string {
    if (format == "dot") {
        return to_dot(g, name);
    }
    return serialize_digraph(g);
}

struct Options {
    std::string graph;
    std::string second;
    std::string cert;
    std::string family;
    std::size_t order = 0;
    std::string recipe;
    std::optional<std::uint64_t> seed;
    std::string format = "edgelist";
    std::uint64_t budget = kDefaultSearchBudget;
    std::string model;
    std::string out;
    std::string k_text;
    std::string mode = "weak";
    bool exact = false;
    std::size_t cap = kDefaultOrderingCap;
    std::string kind;
    std::string dtd;
    std::size_t k = 1;
    std::size_t tries = 0;
};

auto cmd_rank(const Options& o, std::ostream& out, std::ostream& err) -> int {
    const Digraph g = load_graph(o.graph, err);
    const auto r = cycle_rank(g);
    out << r.rank << "\n";
    if (!o.cert.empty()) {
        write_file(o.cert, serialize_certificate(make_certificate(CertificateKind::CrDecomposition, g,
                                                                  encode_cr(g, r.certificate))));
    }
    return kOk;
}

auto cmd_wcol(const Options& o, std::ostream& out, std::ostream& err) -> int {
    const Digraph g = load_graph(o.graph, err);
    std::size_t k = kInfinite;
    if (o.k_text != "inf") {
        try {
            k = std::stoull(o.k_text);
        } catch (const std::exception&) {
            throw UsageError("--k takes a number or inf");
        }
    }
    if (o.mode != "weak" && o.mode != "strong") {
        throw UsageError("--mode takes weak or strong");
    }
    const ReachMode mode = o.mode == "weak" ? ReachMode::Weak : ReachMode::Strong;
    if (k == kInfinite && mode == ReachMode::Weak && !o.exact) {
        out << wcol_inf(g) << "\n";
        return kOk;
    }
    const auto r = coloring_number_exact(g, k, mode, o.cap);
    out << r.value << "\n";
    std::string order;
    for (VertexId v : r.witness) {
        order += (order.empty() ? "" : " ") + g.label(v);
    }
    out << "ordering: " << order << "\n";
    return kOk;
}

auto cmd_gen(const Options& o, std::ostream& out, std::ostream& err) -> int {
    if (o.format != "edgelist" && o.format != "dot") {
        throw UsageError("--format takes edgelist or dot");
    }
    const std::size_t k = o.order;
    Digraph g;
    if (o.family == "ladder") {
        g = gen_ladder(k);
    } else if (o.family == "cyclechain") {
        g = gen_cycle_chain(k).graph;
    } else if (o.family == "treechain") {
        g = gen_tree_chain(k).graph;
    } else if (o.family == "grid") {
        g = gen_cylindrical_grid(k);
    } else if (o.family == "rtc") {
        TreeChainRecipe r;
        if (!o.recipe.empty()) {
            r = load_recipe(o.recipe);
            if (r.depth != k) {
                throw UsageError("recipe depth " + std::to_string(r.depth) + " differs from order " +
                                 std::to_string(k));
            }
        } else {
            std::mt19937_64 rng(resolve_seed(o.seed, err));
            r = random_recipe(k, 3, rng);
        }
        g = gen_relaxed_tree_chain(r).chain.graph;
    } else if (o.family == "m") {
        const auto m = gen_M(k, resolve_seed(o.seed, err));
        g = m.graph;
        if (!o.cert.empty()) {
            write_file(o.cert, serialize_certificate(make_certificate(CertificateKind::ChainDecomposition, g,
                                                                      encode_chain_decomposition(m.decomposition))));
        }
    } else {
        throw UsageError("unknown family " + o.family);
    }
    if (!o.cert.empty() && o.family != "m") {
        throw UsageError("--cert is available for the m family only");
    }
    out << emit_graph(g, o.format, o.family + std::to_string(k));
    return kOk;
}

auto cmd_minor(const Options& o, std::ostream& out, std::ostream& err) -> int {
    const Digraph pattern = load_graph(o.graph, err);
    const Digraph host = load_graph(o.second, err);
    SearchOutcome r;
    try {
        r = find_model(pattern, host, o.budget);
    } catch (const TooLarge& e) {
        out << "Indeterminate: " << e.what() << "\n";
        return kIndeterminate;
    }
    if (const auto* f = std::get_if<Found>(&r)) {
        out << "Found\n";
        if (!o.model.empty()) {
            write_file(o.model, serialize_certificate(make_certificate(CertificateKind::BfModel, host,
                                                                       encode_model(pattern, host, f->model))));
        }
        return kOk;
    }
    if (const auto* n = std::get_if<NotContained>(&r)) {
        out << "NotContained: " << n->reason << "\n";
        return kNo;
    }
    out << "Indeterminate: budget exhausted after " << std::get<Indeterminate>(r).expanded << " expansions\n";
    return kIndeterminate;
}

auto cmd_extract(const Options& o, std::ostream& out, std::ostream& err) -> int {
    Extraction x;
    if (o.kind == "grid-chain") {
        x = extract_from_grid(o.order, GridTarget::Chain);
    } else if (o.kind == "grid-ladder") {
        x = extract_from_grid(o.order, GridTarget::Ladder);
    } else if (o.kind == "tc") {
        TreeChainRecipe r;
        if (!o.recipe.empty()) {
            r = load_recipe(o.recipe);
        } else {
            std::mt19937_64 rng(resolve_seed(o.seed, err));
            r = random_recipe(2 * o.order - 1, 3, rng);
        }
        x.host = gen_relaxed_tree_chain(r).chain.graph;
        x.pattern = gen_tree_chain(o.order).graph;
        x.model = tc_from_relaxed_tree_chain(r, o.order);
        x.script = {"explicit model of TC_" + std::to_string(o.order) + " in the relaxed tree chain of depth " +
                    std::to_string(r.depth)};
    } else {
        throw UsageError("unknown extraction " + o.kind);
    }
    std::filesystem::create_directories(o.out);
    const std::filesystem::path dir(o.out);
    write_file((dir / "host.el").string(), serialize_digraph(x.host));
    write_file((dir / "pattern.el").string(), serialize_digraph(x.pattern));
    write_file((dir / "model.json").string(),
               serialize_certificate(
                   make_certificate(CertificateKind::BfModel, x.host, encode_model(x.pattern, x.host, x.model))));
    std::string script;
    for (const auto& line : x.script) {
        script += line + "\n";
    }
    write_file((dir / "script.txt").string(), script);
    out << "pattern " << x.pattern.vertex_count() << " vertices, host " << x.host.vertex_count() << " vertices, "
        << x.script.size() << " script steps\n";
    return kOk;
}

auto cmd_verify(const Options& o, std::ostream& out, std::ostream& err) -> int {
    static const std::map<std::string, CertificateKind> kinds{{"cr", CertificateKind::CrDecomposition},
                                                             {"model", CertificateKind::BfModel},
                                                             {"dtd", CertificateKind::Dtd},
                                                             {"chain", CertificateKind::ChainDecomposition},
                                                             {"structure", CertificateKind::StructureDescriptor}};
    const auto it = kinds.find(o.kind);
    if (it == kinds.end()) {
        throw UsageError("verify takes cr, model, dtd, chain or structure");
    }
    const Digraph g = load_graph(o.graph, err);
    const Certificate c = load_certificate(o.cert);
    if (c.kind != it->second) {
        out << "invalid: certificate kind is " << to_string(c.kind) << "\n";
        return kNo;
    }
    const auto check = verify_certificate(g, c);
    out << (check.valid ? "valid: " : "invalid: ") << check.detail << "\n";
    return check.valid ? kOk : kNo;
}

auto cmd_dtd(const Options& o, std::ostream& out, std::ostream& err) -> int {
    const Digraph g = load_graph(o.graph, err);
    DirectedTreeDecomposition d;
    if (o.tries > 0) {
        std::mt19937_64 rng(resolve_seed(o.seed, err));
        d = search_dtd(g, o.tries, rng);
    } else {
        d = dtd_from_cr_decomposition(g, cycle_rank(g).certificate);
    }
    out << "width " << validate_dtd(g, d).width << "\n";
    write_file(o.out, serialize_certificate(make_certificate(CertificateKind::Dtd, g, encode_dtd(g, d))));
    return kOk;
}

auto cmd_ep(const Options& o, std::ostream& out, std::ostream& err) -> int {
    const Digraph g = load_graph(o.graph, err);
    const Certificate c = load_certificate(o.dtd);
    if (c.kind != CertificateKind::Dtd) {
        throw UsageError(o.dtd + " is not a dtd certificate");
    }
    if (const auto check = verify_certificate(g, c); !check.valid) {
        throw UsageError(o.dtd + ": " + check.detail);
    }
    const auto d = decode_dtd(g, c.payload);
    MemberCheck member;
    if (o.family == "cycles") {
        member = cycle_member_check();
    } else if (o.family.starts_with("pattern:")) {
        member = subgraph_member_check(load_graph(o.family.substr(8), err));
    } else {
        throw UsageError("--family takes cycles or pattern:FILE");
    }
    if (o.k < 1) {
        throw UsageError("-k must be at least 1");
    }
    const std::size_t width = validate_dtd(g, d).width;
    const auto r = erdos_posa(g, d, member, o.k);
    if (const auto* p = std::get_if<Packing>(&r)) {
        out << "Packing " << p->members.size() << "\n";
        for (const auto& m : p->members) {
            out << labels_of(g, m.vertex_set()) << "\n";
        }
    } else {
        const auto& cover = std::get<Cover>(r);
        out << "Cover " << cover.vertices.size() << " (bound " << (o.k - 1) * (width + 1) << ")\n";
        out << labels_of(g, cover.vertices) << "\n";
    }
    const auto check = verify_erdos_posa(g, width, member, o.k, r);
    out << (check.valid ? "verified" : "verification failed: " + *check.witness) << "\n";
    return check.valid ? kOk : kNo;
}

} // namespace

auto run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int {
    CLI::App app{"Directed graph toolkit: cycle rank, coloring numbers, butterfly minors and certificates", "dgt"};
    app.require_subcommand(1);
    Options o;
    std::function<int(const Options&, std::ostream&, std::ostream&)> action;
    auto on = [&](CLI::App* sub, auto f) { sub->callback([&action, f] { action = f; }); };

    auto* rank = app.add_subcommand("rank", "Cycle rank with an optional certificate");
    rank->add_option("graph", o.graph, "Edge-list file")->required();
    rank->add_option("--cert", o.cert, "Write a cr-decomposition certificate");
    on(rank, cmd_rank);

    auto* wcol = app.add_subcommand("wcol", "Weak or strong coloring numbers");
    wcol->add_option("graph", o.graph, "Edge-list file")->required();
    wcol->add_option("--k", o.k_text, "Radius: a number or inf")->required();
    wcol->add_option("--mode", o.mode, "weak or strong");
    wcol->add_flag("--exact", o.exact, "Minimise over all orderings");
    wcol->add_option("--cap", o.cap, "Largest vertex count for the ordering search");
    on(wcol, cmd_wcol);

    auto* gen = app.add_subcommand("gen", "Generate a family member");
    gen->add_option("family", o.family, "ladder, cyclechain, treechain, grid, rtc or m")->required();
    gen->add_option("order", o.order, "Order (depth for rtc)")->required();
    gen->add_option("--recipe", o.recipe, "Recipe JSON for rtc");
    gen->add_option("--seed", o.seed, "Seed for random families");
    gen->add_option("--format", o.format, "edgelist or dot");
    gen->add_option("--cert", o.cert, "For m: write the chain decomposition certificate");
    on(gen, cmd_gen);

    auto* minor = app.add_subcommand("minor", "Butterfly minor containment");
    minor->add_option("pattern", o.graph, "Pattern edge-list file")->required();
    minor->add_option("host", o.second, "Host edge-list file")->required();
    minor->add_option("--budget", o.budget, "Search budget");
    minor->add_option("--model", o.model, "Write the model certificate when found");
    on(minor, cmd_minor);

    auto* extract = app.add_subcommand("extract", "Host, pattern, model and script bundle of a construction");
    extract->add_option("kind", o.kind, "grid-chain, grid-ladder or tc")->required();
    extract->add_option("k", o.order, "Order")->required();
    extract->add_option("--recipe", o.recipe, "Recipe JSON for tc");
    extract->add_option("--seed", o.seed, "Seed for a random tc recipe");
    extract->add_option("--out", o.out, "Output directory")->required();
    on(extract, cmd_extract);

    auto* verify = app.add_subcommand("verify", "Check a certificate against a graph");
    verify->add_option("kind", o.kind, "cr, model, dtd, chain or structure")->required();
    verify->add_option("graph", o.graph, "Edge-list file")->required();
    verify->add_option("cert", o.cert, "Certificate file")->required();
    on(verify, cmd_verify);

    auto* dtd = app.add_subcommand("dtd", "Write a directed tree decomposition certificate");
    dtd->add_option("graph", o.graph, "Edge-list file")->required();
    dtd->add_option("--out", o.out, "Certificate file")->required();
    dtd->add_option("--search", o.tries, "Random search tries instead of the cycle rank construction");
    dtd->add_option("--seed", o.seed, "Seed for the search");
    on(dtd, cmd_dtd);

    auto* ep = app.add_subcommand("ep", "Packing or cover from a directed tree decomposition");
    ep->add_option("graph", o.graph, "Edge-list file")->required();
    ep->add_option("--dtd", o.dtd, "dtd certificate")->required();
    ep->add_option("--family", o.family, "cycles or pattern:FILE")->required();
    ep->add_option("-k", o.k, "Number of disjoint members sought")->required();
    on(ep, cmd_ep);

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    storage.insert(storage.begin(), "dgt");
    for (auto& a : storage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return action(o, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const LoopError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionViolated& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const TooLarge& e) {
        err << "indeterminate: " << e.what() << "\n";
        return kIndeterminate;
    } catch (const BudgetExceeded& e) {
        err << "indeterminate: " << e.what() << "\n";
        return kIndeterminate;
    }
}

auto run(int argc, char** argv) -> int {
    return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

} // namespace dgt
