// Command-line front end: flow enumeration, reconfiguration-graph reports,
// constructive paths, planar duals, Kempe analysis, and the cubic census.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flowreconf/census.hpp"
#include "flowreconf/generators.hpp"
#include "flowreconf/graph6.hpp"
#include "flowreconf/json_io.hpp"
#include "flowreconf/kempe3.hpp"
#include "flowreconf/pathbuild.hpp"
#include "flowreconf/planardual.hpp"
#include "flowreconf/reconfig.hpp"

using namespace flowreconf;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw parse_error("bad integer list: " + text);
        }
    }
    return out;
}

// "gen:NAME[:ARGS]" or a path to a graph6 file (first nonempty line)
OrientedMultigraph load_graph(const std::string& spec) {
    if (spec.rfind("gen:", 0) == 0) {
        std::string rest = spec.substr(4);
        std::string name = rest, args;
        if (auto colon = rest.find(':'); colon != std::string::npos) {
            name = rest.substr(0, colon);
            args = rest.substr(colon + 1);
        }
        if (name == "k4") return k4();
        if (name == "k33") return k33();
        if (name == "cube") return cube();
        if (name == "petersen") return petersen();
        if (name == "theta") return theta_graph();
        if (name == "klee") return klee(parse_int_list(args));
        auto ints = parse_int_list(args);
        if (ints.size() != 1) throw parse_error("generator " + name + " needs one parameter");
        if (name == "dipole") return dipole(ints[0]);
        if (name == "cycle") return cycle(ints[0]);
        if (name == "moebius") return moebius_ladder(ints[0]);
        if (name == "wheel") return wheel(ints[0]);
        throw parse_error("unknown generator: " + name);
    }
    std::ifstream in(spec);
    if (!in) throw parse_error("cannot open graph file: " + spec);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) return parse_graph6(line);
    throw parse_error("no graph line in " + spec);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad json in ") + path + ": " + e.what());
    }
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw parse_error("cannot write to " + out_path);
    out << text << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nowhere-zero flow reconfiguration toolkit"};
    app.require_subcommand(1);

    std::string graph_spec, domain_text, out_path;
    long long budget = default_enumeration_budget;

    auto* cmd_enum = app.add_subcommand("enumerate", "list all nowhere-zero flows");
    cmd_enum->add_option("--graph", graph_spec, "graph6 file or gen:<name>[:args]")->required();
    cmd_enum->add_option("--domain", domain_text, "value domain: k, z:k or z:m1,m2,...")
        ->required();
    cmd_enum->add_option("--budget", budget, "enumeration budget");
    cmd_enum->add_option("--out", out_path, "output file (default stdout)");
    bool count_only = false;
    cmd_enum->add_flag("--count-only", count_only, "emit only the flow count");

    auto* cmd_rec = app.add_subcommand("reconfig", "reconfiguration graph statistics");
    cmd_rec->add_option("--graph", graph_spec)->required();
    cmd_rec->add_option("--domain", domain_text)->required();
    cmd_rec->add_option("--budget", budget);
    cmd_rec->add_option("--out", out_path);
    bool with_diameter = false;
    cmd_rec->add_flag("--diameter", with_diameter, "also compute the diameter when connected");

    auto* cmd_path = app.add_subcommand("path", "constructive path between two flows");
    std::string from_path, to_path;
    int split = 1;
    cmd_path->add_option("--graph", graph_spec)->required();
    cmd_path->add_option("--from", from_path, "flow json file")->required();
    cmd_path->add_option("--to", to_path, "flow json file")->required();
    cmd_path->add_option("--split", split,
                         "leading cyclic factors forming the first block (product groups)");
    cmd_path->add_option("--out", out_path);

    auto* cmd_dual = app.add_subcommand("dual", "planar dual of an embedding");
    std::string embedding_path;
    cmd_dual->add_option("--embedding", embedding_path, "embedding json file")->required();
    cmd_dual->add_option("--out", out_path);

    auto* cmd_kempe = app.add_subcommand("kempe", "Kempe graph of a cubic graph");
    cmd_kempe->add_option("--graph", graph_spec)->required();
    cmd_kempe->add_option("--out", out_path);

    auto* cmd_census = app.add_subcommand("census", "run a graph6 corpus through the analysis");
    std::string corpus_path;
    std::vector<std::string> domain_texts;
    int jobs = 1, min_ec = 3;
    bool no_cubic_filter = false, census_diameter = false;
    cmd_census->add_option("--corpus", corpus_path, "graph6 file, one graph per line")
        ->required();
    cmd_census->add_option("--domain", domain_texts, "domain (repeatable)")->required();
    cmd_census->add_option("--jobs", jobs, "worker threads");
    cmd_census->add_option("--min-edge-connectivity", min_ec, "filter threshold (default 3)");
    cmd_census->add_flag("--no-cubic-filter", no_cubic_filter, "keep non-cubic graphs");
    cmd_census->add_flag("--diameter", census_diameter);
    cmd_census->add_option("--budget", budget);
    cmd_census->add_option("--out", out_path, "jsonl output (default stdout)");

    try {
        app.parse(argc, argv);

        if (cmd_enum->parsed()) {
            auto g = load_graph(graph_spec);
            auto domain = parse_domain(domain_text);
            auto flows = enumerate_nz_flows(g, domain, nullptr, budget);
            json j{{"graph", graph_to_json(g)},
                   {"domain", domain_to_json(domain)},
                   {"flow_count", flows.size()}};
            if (!count_only) {
                j["flows"] = json::array();
                for (const auto& f : flows) j["flows"].push_back(flow_to_json(f));
            }
            write_output(out_path, j.dump(2));
        } else if (cmd_rec->parsed()) {
            auto g = load_graph(graph_spec);
            auto domain = parse_domain(domain_text);
            auto r = build_reconfig(g, domain, budget);
            json j = report_to_json(report(r, with_diameter));
            j["graph"] = graph_to_json(g);
            j["domain"] = domain_to_json(domain);
            write_output(out_path, j.dump(2));
        } else if (cmd_path->parsed()) {
            auto g = load_graph(graph_spec);
            Flow from = flow_from_json(load_json_file(from_path));
            Flow to = flow_from_json(load_json_file(to_path));
            if (!(from.domain == to.domain))
                throw validation_error("path endpoints live in different domains");
            ReconfigPath path;
            if (from.domain.is_integer()) {
                path = mod_zero_path(g, from, to);
            } else {
                const auto& moduli = from.domain.group_spec().moduli();
                if (split < 1 || split >= static_cast<int>(moduli.size()))
                    throw validation_error(
                        "path construction needs a product group (use --split) or congruent "
                        "integer flows");
                std::vector<int> first(moduli.begin(), moduli.begin() + split);
                std::vector<int> second(moduli.begin() + split, moduli.end());
                auto prod = make_product(make_group(first), make_group(second));
                path = product_path(g, prod, from, to);
            }
            validate_path(g, path);
            write_output(out_path, path_to_json(path).dump(2));
        } else if (cmd_dual->parsed()) {
            auto emb = embedding_from_json(load_json_file(embedding_path));
            auto dual = build_dual(emb);
            json j{{"dual", graph_to_json(dual.dual)}, {"faces_of_edge", json::array()}};
            for (auto [l, r] : dual.faces_of_edge) j["faces_of_edge"].push_back({l, r});
            write_output(out_path, j.dump(2));
        } else if (cmd_kempe->parsed()) {
            auto g = load_graph(graph_spec);
            auto kg = build_kempe_graph(g);
            verify_correspondence(g);
            auto fr = build_reconfig(g, z2z2_domain());
            json j{{"coloring_count", kg.colorings.size()},
                   {"kempe_components", kg.component_count},
                   {"kempe_connected", kg.component_count <= 1},
                   {"flow_graph", report_to_json(report(fr))},
                   {"correspondence", "ok"}};
            write_output(out_path, j.dump(2));
        } else if (cmd_census->parsed()) {
            std::ifstream in(corpus_path);
            if (!in) throw parse_error("cannot open corpus: " + corpus_path);
            std::vector<std::string> lines;
            std::string line;
            while (std::getline(in, line))
                if (!line.empty()) lines.push_back(line);
            CensusOptions opts;
            for (const auto& t : domain_texts) opts.domains.push_back(parse_domain(t));
            opts.filters.require_cubic = !no_cubic_filter;
            opts.filters.min_edge_connectivity = min_ec;
            opts.jobs = jobs;
            opts.budget = budget;
            opts.diameters = census_diameter;
            auto [records, summary] = run_census(lines, opts);
            std::ostringstream body;
            for (const auto& rec : records) body << census_record_to_json(rec).dump() << "\n";
            body << census_summary_to_json(summary).dump();
            write_output(out_path, body.str());
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
