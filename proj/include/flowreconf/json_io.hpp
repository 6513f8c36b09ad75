#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flowreconf/census.hpp"
#include "flowreconf/flows.hpp"
#include "flowreconf/multigraph.hpp"
#include "flowreconf/pathbuild.hpp"
#include "flowreconf/planardual.hpp"
#include "flowreconf/reconfig.hpp"

namespace flowreconf {

using json = nlohmann::json;

inline json domain_to_json(const ValueDomain& d) {
    if (d.is_group()) return json{{"kind", "group"}, {"moduli", d.group_spec().moduli()}};
    return json{{"kind", "int"}, {"k", d.band()}};
}

inline ValueDomain domain_from_json(const json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "group")
            return ValueDomain::group(make_group(j.at("moduli").get<std::vector<int>>()));
        if (kind == "int") return ValueDomain::integer_band(j.at("k").get<int>());
        throw parse_error("unknown domain kind: " + kind);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad domain object: ") + e.what());
    }
}

/// Group values serialize as residue arrays, integers as signed numbers.
inline json flow_to_json(const Flow& f) {
    json values = json::array();
    if (f.domain.is_group()) {
        const GroupSpec& spec = f.domain.group_spec();
        for (int32_t code : f.values) values.push_back(spec.decode(code));
    } else {
        for (int32_t v : f.values) values.push_back(v);
    }
    return json{{"domain", domain_to_json(f.domain)}, {"values", values}};
}

inline Flow flow_from_json(const json& j) {
    Flow f;
    try {
        f.domain = domain_from_json(j.at("domain"));
        for (const auto& item : j.at("values")) {
            if (f.domain.is_group())
                f.values.push_back(
                    f.domain.group_spec().encode(item.get<std::vector<int32_t>>()));
            else
                f.values.push_back(item.get<int32_t>());
        }
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad flow object: ") + e.what());
    }
    return f;
}

inline json report_to_json(const ReconfigReport& rep) {
    json j{{"flow_count", rep.flow_count},
           {"component_count", rep.component_count},
           {"component_sizes", rep.component_sizes},
           {"min_degree", rep.min_degree},
           {"is_perfect_matching", rep.perfect_matching},
           {"connected", rep.connected}};
    if (rep.diameter) j["diameter"] = *rep.diameter;
    return j;
}

inline json move_to_json(const Move& mv, const ValueDomain& domain) {
    json cyc = json::array();
    for (const auto& se : mv.cycle.entries) cyc.push_back({{"edge", se.edge}, {"sign", se.sign}});
    json value;
    if (domain.is_group()) value = domain.group_spec().decode(mv.value);
    else value = mv.value;
    return json{{"cycle", cyc}, {"value", value}};
}

inline json path_to_json(const ReconfigPath& path) {
    json j;
    j["length"] = path.moves.size();
    j["flows"] = json::array();
    for (const auto& f : path.flows) j["flows"].push_back(flow_to_json(f));
    j["moves"] = json::array();
    const ValueDomain& domain = path.flows.front().domain;
    for (const auto& mv : path.moves) j["moves"].push_back(move_to_json(mv, domain));
    return j;
}

inline json graph_to_json(const OrientedMultigraph& g) {
    json arcs = json::array();
    for (int e = 0; e < g.edge_count(); ++e)
        arcs.push_back({g.arc(e).tail, g.arc(e).head});
    return json{{"vertices", g.vertex_count()}, {"arcs", arcs}};
}

/// {vertices, arcs: [[tail, head]], faces: [[{edge, side}]]}
inline PlaneEmbedding embedding_from_json(const json& j) {
    try {
        int n = j.at("vertices").get<int>();
        std::vector<std::pair<int, int>> arcs;
        for (const auto& a : j.at("arcs")) arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
        OrientedMultigraph g(n, arcs);
        std::vector<std::vector<FaceEntry>> faces;
        for (const auto& fw : j.at("faces")) {
            std::vector<FaceEntry> walk;
            for (const auto& fe : fw) {
                std::string side = fe.at("side").get<std::string>();
                if (side != "left" && side != "right")
                    throw parse_error("embedding side must be left or right");
                walk.push_back({fe.at("edge").get<int>(), side == "right"});
            }
            faces.push_back(std::move(walk));
        }
        return make_embedding(std::move(g), std::move(faces));
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad embedding object: ") + e.what());
    }
}

inline json embedding_to_json(const PlaneEmbedding& emb) {
    json j = graph_to_json(emb.graph);
    json faces = json::array();
    for (const auto& walk : emb.faces) {
        json fw = json::array();
        for (const auto& fe : walk)
            fw.push_back({{"edge", fe.edge}, {"side", fe.face_on_right ? "right" : "left"}});
        faces.push_back(fw);
    }
    j["faces"] = faces;
    return j;
}

inline json census_record_to_json(const CensusRecord& rec) {
    json stats = json::object();
    for (const auto& [label, rep] : rec.stats) stats[label] = report_to_json(rep);
    json j{{"graph", rec.id},
           {"vertices", rec.vertices},
           {"edges", rec.edges},
           {"cubic", rec.cubic},
           {"edge_connectivity", rec.edge_connectivity},
           {"filtered_out", rec.filtered_out},
           {"stats", stats}};
    if (!rec.error.empty()) j["error"] = rec.error;
    return j;
}

inline json census_summary_to_json(const CensusSummary& s) {
    json domains = json::object();
    for (const auto& [label, ds] : s.by_domain) {
        json hist = json::object();
        for (const auto& [size, count] : ds.component_size_histogram)
            hist[std::to_string(size)] = count;
        domains[label] = json{{"analyzed", ds.analyzed},
                              {"empty", ds.empty},
                              {"connected_nonempty", ds.connected_nonempty},
                              {"disconnected", ds.disconnected},
                              {"perfect_matchings", ds.perfect_matchings},
                              {"max_component_count", ds.max_component_count},
                              {"max_component_graphs", ds.max_component_ids},
                              {"component_size_histogram", hist}};
    }
    return json{{"summary",
                 json{{"lines", s.lines},
                      {"analyzed", s.analyzed},
                      {"filtered_out", s.filtered_out},
                      {"errors", s.errors},
                      {"domains", domains}}}};
}

} // namespace flowreconf
