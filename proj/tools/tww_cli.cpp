// Command-line front end over the twinwidth headers.
// Exit codes: 0 success, 1 verification failure, 2 malformed input or usage.

#include <twinwidth/twinwidth.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace twinwidth;
using json = nlohmann::json;

namespace {

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "text";
    std::uint64_t seed = 1;
};

auto json_mode(const Options & o) -> bool { return o.format == "json"; }

auto open_out(const std::string & path) -> std::ofstream
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw FormatError("cannot write " + path);
    return out;
}

// Writes to the named file, or to stdout when the name is empty or "-".
template <class F>
auto emit(const std::string & path, F writer) -> void
{
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    auto out = open_out(path);
    writer(out);
}

auto load_graph(const std::string & p) -> Trigraph { return load_file<Trigraph>(p, [](std::istream & i) { return read_graph(i); }); }

auto load_sequence(const std::string & p) -> ContractionSequence
{
    return load_file<ContractionSequence>(p, [](std::istream & i) { return read_sequence(i); });
}

auto load_parallel(const std::string & p) -> ParallelSequence
{
    return load_file<ParallelSequence>(p, [](std::istream & i) { return read_parallel(i); });
}

auto load_matrix(const std::string & p) -> TriMatrix { return load_file<TriMatrix>(p, [](std::istream & i) { return read_matrix(i); }); }

auto load_order(const std::string & p) -> std::vector<Vertex>
{
    return load_file<std::vector<Vertex>>(p, [](std::istream & i) { return read_order(i); });
}

auto cuts_json(const Division & d) -> json { return json{{"row_cuts", d.row_cuts}, {"col_cuts", d.col_cuts}}; }

auto cuts_text(const std::vector<std::size_t> & c) -> std::string
{
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += (i ? "," : "") + std::to_string(c[i]);
    return s;
}

// Exact sequence for a small factor, used by the product generator.
auto exact_sequence(const Trigraph & g) -> std::pair<std::size_t, ContractionSequence>
{
    auto r = tww_exact(g);
    return {r.width, r.sequence};
}

auto add_gen(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("gen", "Generate a graph family with witness data");
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<std::size_t>(3);
    auto levels = std::make_shared<unsigned>(2);
    auto c = std::make_shared<double>(1.0);
    auto sigma = std::make_shared<std::string>();
    auto independent = std::make_shared<bool>(false);
    auto g_path = std::make_shared<std::string>(), h_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>(), seq_out = std::make_shared<std::string>(),
         order_out = std::make_shared<std::string>();
    cmd->add_option("--family", *family, "halfgraph | rook | lift | subdivision | product")
        ->required()
        ->check(CLI::IsMember({"halfgraph", "rook", "lift", "subdivision", "product"}));
    cmd->add_option("--n", *n, "size parameter");
    cmd->add_option("--levels", *levels, "number of 2-lifts (lift)");
    cmd->add_option("--c", *c, "compression constant (subdivision)");
    cmd->add_option("--sigma", *sigma, "one-line permutation as digits, e.g. 41532 (halfgraph)");
    cmd->add_flag("--independent", *independent, "A, B, C induce independent sets (halfgraph)");
    cmd->add_option("--left", *g_path, "first factor graph file (product)");
    cmd->add_option("--right", *h_path, "second factor graph file (product)");
    cmd->add_option("-o,--out", *out, "graph output file");
    cmd->add_option("--seq-out", *seq_out, "witness sequence output file");
    cmd->add_option("--order-out", *order_out, "vertex order output file");
    cmd->callback([=, &o] {
        Trigraph g;
        std::optional<ContractionSequence> seq;
        std::optional<ParallelSequence> pseq;
        std::optional<std::vector<Vertex>> order;
        if (*family == "halfgraph") {
            Permutation s = sigma->empty() ? Permutation::identity(*n) : Permutation::from_one_line(*sigma);
            g = gen_halfgraph_sandwich(s.size(), s, ! *independent);
        }
        else if (*family == "rook") {
            g = gen_rook(*n);
        }
        else if (*family == "lift") {
            auto lift = iterated_lift(*levels, o.seed);
            g = lift.chain.back().all_red();
            pseq = lift.witness;
        }
        else if (*family == "subdivision") {
            auto so = subdivision_order(*n, *c);
            g = so.graph;
            order = so.order;
        }
        else {
            if (g_path->empty() || h_path->empty())
                throw CLI::ValidationError("--left and --right are required for the product family");
            auto gg = load_graph(*g_path), hh = load_graph(*h_path);
            auto [dg, sg] = exact_sequence(gg);
            auto [dh, sh] = exact_sequence(hh);
            (void)dg;
            (void)dh;
            g = strong_product(gg, hh);
            seq = product_sequence(gg, sg, hh, sh);
        }
        emit(*out, [&](std::ostream & s) { write_graph(s, g); });
        if (! seq_out->empty()) {
            if (seq)
                emit(*seq_out, [&](std::ostream & s) { write_sequence(s, *seq); });
            else if (pseq)
                emit(*seq_out, [&](std::ostream & s) { write_parallel(s, *pseq); });
            else
                throw CLI::ValidationError("family " + *family + " has no witness sequence");
        }
        if (! order_out->empty()) {
            if (! order)
                throw CLI::ValidationError("family " + *family + " has no vertex order");
            emit(*order_out, [&](std::ostream & s) { write_order(s, *order); });
        }
    });
}

auto add_verify(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("verify", "Check a contraction sequence and report its width");
    auto graph = std::make_shared<std::string>(), seq = std::make_shared<std::string>();
    auto parallel = std::make_shared<bool>(false);
    auto bound = std::make_shared<long long>(-1);
    cmd->add_option("graph", *graph, "graph file")->required();
    cmd->add_option("sequence", *seq, "sequence file")->required();
    cmd->add_flag("--parallel", *parallel, "sequence file is in the parallel format");
    cmd->add_option("--bound", *bound, "fail when the width exceeds this value");
    cmd->callback([=, &o] {
        auto g = load_graph(*graph);
        std::optional<std::size_t> b;
        if (*bound >= 0)
            b = static_cast<std::size_t>(*bound);
        auto rep = *parallel ? verify_parallel(g, load_parallel(*seq), b) : verify_sequence(g, load_sequence(*seq), b);
        if (json_mode(o)) {
            json j{{"valid", rep.valid}, {"width", rep.width}};
            if (! rep.valid) {
                j["failing_step"] = rep.failing_step ? json(*rep.failing_step) : json(nullptr);
                j["reason"] = rep.reason;
            }
            std::cout << j.dump() << '\n';
        }
        else if (rep.valid)
            std::cout << "valid width=" << rep.width << '\n';
        else
            std::cout << "invalid step=" << (rep.failing_step ? std::to_string(*rep.failing_step) : "none") << " width=" << rep.width << " reason=" << rep.reason << '\n';
        if (! rep.valid)
            throw VerificationFailure("");
    });
}

auto add_tww(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("tww", "Exact twin-width of a small graph");
    auto graph = std::make_shared<std::string>(), seq_out = std::make_shared<std::string>();
    auto cap = std::make_shared<std::size_t>(10);
    cmd->add_option("graph", *graph, "graph file")->required();
    cmd->add_option("--max-vertices", *cap, "vertex cap for the exhaustive search");
    cmd->add_option("--seq-out", *seq_out, "write an optimal sequence here");
    cmd->callback([=, &o] {
        ExactLimits lim;
        lim.max_vertices = *cap;
        auto r = tww_exact(load_graph(*graph), lim);
        if (json_mode(o))
            std::cout << json{{"tww", r.width}, {"nodes", r.nodes}}.dump() << '\n';
        else
            std::cout << "tww=" << r.width << '\n';
        if (! seq_out->empty())
            emit(*seq_out, [&](std::ostream & s) { write_sequence(s, r.sequence); });
    });
}

auto add_label(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("label", "Adjacency labels from a parallel sequence");
    cmd->require_subcommand(1);
    auto * build = cmd->add_subcommand("build", "Build labels");
    auto graph = std::make_shared<std::string>(), seq = std::make_shared<std::string>(),
         out = std::make_shared<std::string>();
    auto d = std::make_shared<std::uint32_t>(0);
    build->add_option("graph", *graph, "graph file")->required();
    build->add_option("sequence", *seq, "parallel sequence file")->required();
    build->add_option("--d", *d, "red degree bound")->required();
    build->add_option("-o,--out", *out, "label file")->required();
    build->callback([=, &o] {
        auto g = load_graph(*graph);
        auto ps = load_parallel(*seq);
        auto rep = verify_parallel(g, ps, *d);
        if (! rep.valid) {
            std::cerr << "sequence rejected: " << rep.reason << '\n';
            throw VerificationFailure("");
        }
        auto lab = build_labels(g, ps, *d);
        auto f = open_out(*out);
        write_labels(f, lab);
        if (json_mode(o))
            std::cout << json{{"n", lab.scheme.n}, {"d", lab.scheme.d}, {"k", lab.scheme.k},
                                 {"label_bits", lab.scheme.label_length()}}
                             .dump()
                      << '\n';
        else
            std::cout << "labels=" << lab.scheme.n << " bits=" << lab.scheme.label_length() << '\n';
    });
    auto * query = cmd->add_subcommand("query", "Decode the adjacency of two vertices");
    auto labels = std::make_shared<std::string>();
    auto u = std::make_shared<Vertex>(0), v = std::make_shared<Vertex>(0);
    query->add_option("labels", *labels, "label file")->required();
    query->add_option("u", *u, "source vertex")->required();
    query->add_option("v", *v, "target vertex")->required();
    query->callback([=, &o] {
        auto lab = load_file<Labeling>(*labels, [](std::istream & i) { return read_labels(i); });
        if (! lab.labels.contains(*u) || ! lab.labels.contains(*v))
            throw FormatError("vertex not present in the label file");
        auto a = decode_adjacency(lab.scheme, lab.labels.at(*u), lab.labels.at(*v));
        if (json_mode(o))
            std::cout << json{{"color", color_name(a.color)}, {"index", a.index}}.dump() << '\n';
        else
            std::cout << adjacency_name(a) << '\n';
    });
}

auto add_codec(CLI::App & app, Options & o) -> void
{
    auto * pack = app.add_subcommand("pack", "Compress a graph with a d-sequence");
    auto graph = std::make_shared<std::string>(), seq = std::make_shared<std::string>(),
         out = std::make_shared<std::string>();
    auto d = std::make_shared<std::uint32_t>(0);
    pack->add_option("graph", *graph, "graph file")->required();
    pack->add_option("sequence", *seq, "sequence file")->required();
    pack->add_option("--d", *d, "red degree bound")->required();
    pack->add_option("-o,--out", *out, "blob file")->required();
    pack->callback([=, &o] {
        auto g = load_graph(*graph);
        auto s = load_sequence(*seq);
        auto rep = verify_sequence(g, s, *d);
        if (! rep.valid) {
            std::cerr << "sequence rejected: " << rep.reason << '\n';
            throw VerificationFailure("");
        }
        auto blob = codec_encode(g, s, *d);
        auto f = open_out(*out);
        write_blob(f, blob);
        auto budget = codec_budget(blob.n, blob.d);
        if (json_mode(o))
            std::cout << json{{"payload_bits", blob.payload.size()}, {"budget_bits", budget}}.dump() << '\n';
        else
            std::cout << "payload_bits=" << blob.payload.size() << " budget_bits=" << budget << '\n';
    });
    auto * unpack = app.add_subcommand("unpack", "Decompress a blob into a graph file");
    auto blob_path = std::make_shared<std::string>(), graph_out = std::make_shared<std::string>();
    unpack->add_option("blob", *blob_path, "blob file")->required();
    unpack->add_option("-o,--out", *graph_out, "graph output file");
    unpack->callback([=] {
        auto blob = load_file<Blob>(*blob_path, [](std::istream & i) { return read_blob(i); });
        auto g = codec_decode(blob);
        emit(*graph_out, [&](std::ostream & s) { write_graph(s, g); });
    });
}

auto add_gridcheck(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("gridcheck", "Search a matrix for a t-grid or t-mixed minor");
    auto matrix = std::make_shared<std::string>(), kind = std::make_shared<std::string>("grid");
    auto t = std::make_shared<std::size_t>(2);
    auto max_dim = std::make_shared<std::size_t>(64);
    cmd->add_option("matrix", *matrix, "matrix file")->required();
    cmd->add_option("--t", *t, "minor order")->required();
    cmd->add_option("--kind", *kind, "grid | mixed")->check(CLI::IsMember({"grid", "mixed"}));
    cmd->add_option("--max-dim", *max_dim, "dimension cap for the exact search");
    cmd->callback([=, &o] {
        auto m = load_matrix(*matrix);
        SearchLimits lim{*max_dim};
        auto found = *kind == "grid" ? find_t_grid(m, *t, lim) : find_t_mixed(m, *t, lim);
        if (json_mode(o)) {
            json j{{"kind", *kind}, {"t", *t}, {"found", found.has_value()}};
            if (found)
                j["division"] = cuts_json(*found);
            std::cout << j.dump() << '\n';
        }
        else if (found)
            std::cout << "found rows=" << cuts_text(found->row_cuts) << " cols=" << cuts_text(found->col_cuts) << '\n';
        else
            std::cout << "free\n";
    });
}

auto add_coarsen(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("coarsen", "Extract a parallel sequence by neat coarsening");
    auto input = std::make_shared<std::string>(), order = std::make_shared<std::string>(),
         trace = std::make_shared<std::string>(), out = std::make_shared<std::string>();
    auto as_matrix = std::make_shared<bool>(false);
    auto p = std::make_shared<CoarsenParams>();
    cmd->add_option("input", *input, "graph file, or matrix file with --matrix")->required();
    cmd->add_flag("--matrix", *as_matrix, "input is a symmetric matrix file");
    cmd->add_option("--order", *order, "vertex order file (graph input)");
    cmd->add_option("--mv-cap", p->mv_cap, "mixed value cap");
    cmd->add_option("--ps-cap", p->ps_cap, "part size cap");
    cmd->add_option("--large", p->large_threshold, "size at which a part counts as large");
    cmd->add_option("--quota", p->quota, "large parts per round, 0 for as many as possible");
    cmd->add_option("--d", p->d, "mixed minor order checked on the input");
    cmd->add_option("--trace", *trace, "round-by-round CSV trace");
    cmd->add_option("-o,--out", *out, "parallel sequence output file");
    cmd->callback([=, &o] {
        ExtractResult r;
        if (*as_matrix)
            r = extract_parallel_sequence(load_matrix(*input), *p);
        else {
            auto g = load_graph(*input);
            r = extract_parallel_sequence(g, order->empty() ? g.vertices() : load_order(*order), *p);
        }
        if (! trace->empty())
            emit(*trace, [&](std::ostream & s) {
                s << "round,dim,pairs,fusions,twin_round,max_mixed_value,max_part_size,red_number,red_degree\n";
                for (std::size_t i = 0; i < r.rounds.size(); ++i) {
                    auto & x = r.rounds[i];
                    s << i << ',' << x.dim << ',' << x.pairs << ',' << x.fusions << ',' << x.twin_round << ','
                      << x.max_mixed_value << ',' << x.max_part_size << ',' << x.red_number << ','
                      << x.stage_red_degree << '\n';
                }
            });
        if (! out->empty())
            emit(*out, [&](std::ostream & s) { write_parallel(s, r.sequence); });
        if (json_mode(o))
            std::cout << json{{"steps", r.sequence.size()}, {"rounds", r.rounds.size()}, {"tail", r.tail_steps},
                                 {"width", r.width}, {"red_bound_violations", r.red_bound_violations}}
                             .dump()
                      << '\n';
        else
            std::cout << "steps=" << r.sequence.size() << " rounds=" << r.rounds.size() << " tail=" << r.tail_steps
                      << " width=" << r.width << '\n';
    });
}

auto add_layout(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("layout-check", "Validate a queue or stack layout");
    auto graph = std::make_shared<std::string>(), layout = std::make_shared<std::string>();
    auto grid = std::make_shared<bool>(false);
    cmd->add_option("graph", *graph, "graph file")->required();
    cmd->add_option("layout", *layout, "layout file")->required();
    cmd->add_flag("--grid", *grid, "also check that the ordered matrix is 2(t+1)-grid free");
    cmd->callback([=, &o] {
        auto g = load_graph(*graph);
        auto lay = load_file<Layout>(*layout, [](std::istream & i) { return read_layout(i); });
        auto rep = layout_check(g, lay);
        std::optional<GridBoundReport> gb;
        if (rep.valid && *grid)
            gb = layout_grid_bound(g, lay);
        bool ok = rep.valid && (! gb || gb->grid_free);
        if (json_mode(o)) {
            json j{{"valid", rep.valid}, {"violations", rep.violations}, {"reason", rep.reason}};
            if (gb)
                j["grid"] = gb->grid, j["grid_free"] = gb->grid_free;
            std::cout << j.dump() << '\n';
        }
        else {
            std::cout << (rep.valid ? "valid" : "invalid reason=" + rep.reason);
            if (gb)
                std::cout << ' ' << gb->grid << "-grid " << (gb->grid_free ? "free" : "found");
            std::cout << '\n';
        }
        if (! ok)
            throw VerificationFailure("");
    });
}

auto add_census(CLI::App & app, Options & o) -> void
{
    auto * cmd = app.add_subcommand("census", "Count labeled graphs of bounded twin-width");
    auto n = std::make_shared<std::size_t>(0), d = std::make_shared<std::size_t>(0);
    auto threads = std::make_shared<unsigned>(0);
    cmd->add_option("--n", *n, "vertex count, 1..6")->required();
    cmd->add_option("--d", *d, "twin-width bound")->required();
    cmd->add_option("--threads", *threads, "worker threads, 0 for automatic");
    cmd->callback([=, &o] {
        auto c = census(*n, *d, *threads);
        if (json_mode(o))
            std::cout << json{{"n", *n}, {"d", *d}, {"count", c}}.dump() << '\n';
        else
            std::cout << "n,d,count\n" << *n << ',' << *d << ',' << c << '\n';
    });
}

}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Twin-width toolkit: sequences, exact search, labels, codec, constructions"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", o.seed, "seed for every random choice");
    add_gen(app, o);
    add_verify(app, o);
    add_tww(app, o);
    add_label(app, o);
    add_codec(app, o);
    add_gridcheck(app, o);
    add_coarsen(app, o);
    add_layout(app, o);
    add_census(app, o);
    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    catch (const VerificationFailure &) {
        return 1;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
