#pragma once
// JSON report serialization. Every document carries a stable schema_version
// so downstream tooling can detect format changes. This header is the only
// place the JSON library is included (it is heavy; keep it out of the core).
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "ramnet/cayley.hpp"
#include "ramnet/certificates.hpp"
#include "ramnet/generators.hpp"
#include "ramnet/protocol.hpp"
#include "ramnet/spectral.hpp"

namespace ramnet::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

inline std::string hex(const protocol::Bytes& b) {
    std::ostringstream out;
    for (uint8_t v : b) out << std::hex << std::setw(2) << std::setfill('0') << int(v);
    return out.str();
}

inline json ztau_json(const algebra::ZTau& z) { return json::array({z.x, z.y}); }

inline json certificate_json(const numbertheory::PrimeCertificate& c) {
    json j;
    j["N"] = c.N;
    j["sqrt_m1"] = c.sqrt_m1;
    j["sqrt_5"] = c.sqrt_5;
    j["pell"] = {{"a", c.pell.a}, {"b", c.pell.b}, {"scale", c.pell.scale}};
    j["tau_is_square"] = c.tau_is_square;
    j["pi_split_ok"] = c.pi_split_ok;
    j["pi_residue"] = c.pi_residue;
    j["pi_bar_residue"] = c.pi_bar_residue;
    return j;
}

inline json scan_report_json(int64_t p, int64_t limit,
                             const std::vector<numbertheory::PrimeCertificate>& certs) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "scan";
    j["p"] = p;
    j["limit"] = limit;
    j["count"] = certs.size();
    j["certificates"] = json::array();
    for (const auto& c : certs) j["certificates"].push_back(certificate_json(c));
    return j;
}

inline json density_report_json(const numbertheory::DensityReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "density";
    j["limit"] = r.limit;
    j["primes"] = r.prime_count;
    j["class_1_9_mod_20"] = r.class_count;
    j["criterion_part1"] = r.part1_count;
    j["criterion_both"] = r.part2_count;
    j["part1_fraction"] = r.part1_fraction();
    j["both_fraction"] = r.part2_fraction();
    return j;
}

template <class R>
json generator_json(const algebra::Quat<R>& q);
template <>
inline json generator_json<int64_t>(const algebra::QuatZ& q) {
    return json::array({q.a, q.b, q.c, q.d});
}
template <>
inline json generator_json<algebra::ZTau>(const algebra::QuatF& q) {
    return json{{"den", q.den},
                {"coeffs", json::array({ztau_json(q.a), ztau_json(q.b), ztau_json(q.c),
                                        ztau_json(q.d)})}};
}

template <class R>
json generator_set_json(const generators::GeneratorSet<R>& s) {
    json j;
    j["color"] = s.color;
    j["count"] = s.count();
    j["generators"] = json::array();
    for (const auto& g : s.gens) j["generators"].push_back(generator_json<R>(g));
    return j;
}

inline json graph_summary_json(const cayley::ColoredCayleyGraph& g,
                               const cayley::ComponentReport& comp, int64_t girth_value) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "graph";
    j["vertices"] = g.order();
    j["colors"] = json::array();
    for (uint16_t c = 0; c < g.num_colors(); ++c)
        j["colors"].push_back({{"name", g.colors()[c].name},
                               {"degree", g.regular_degree(c)},
                               {"generators", g.colors()[c].mats.size()}});
    j["connected"] = comp.connected;
    j["components"] = comp.num_components;
    j["bipartite"] = comp.bipartite;
    j["diameter"] = comp.diameter() >= 0 ? json(comp.diameter()) : json();
    j["girth"] = girth_value >= 0 ? json(girth_value) : json();
    return j;
}

inline json spectral_report_json(const spectral::SpectralReport& r, bool include_spectrum = true) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "spectral";
    j["color"] = r.color;
    j["method"] = r.method;
    j["n"] = r.n;
    j["r"] = r.r;
    j["bipartite"] = r.bipartite;
    j["lambda_max_nontrivial"] = r.lambda_max_nontrivial;
    j["lambda_min"] = r.lambda_min;
    j["ramanujan_bound"] = r.verdict.bound;
    j["verdict"] = r.verdict.ramanujan;
    j["girth"] = r.girth >= 0 ? json(r.girth) : json();
    j["diameter"] = r.diameter >= 0 ? json(r.diameter) : json();
    j["diameter_exact"] = r.diameter_exact;
    j["cheeger_lower"] = r.cheeger_lower;
    if (r.method == "iterative") j["residual"] = r.residual();
    if (include_spectrum && !r.spectrum.empty()) j["spectrum"] = r.spectrum;
    return j;
}

template <class R>
json square_table_json(const generators::SquareTable<R>& t) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "square_table";
    j["red"] = t.red.color;
    j["blue"] = t.blue.color;
    j["entries"] = json::array();
    for (size_t i = 0; i < t.red.count(); ++i)
        for (size_t k = 0; k < t.blue.count(); ++k) {
            const auto& e = t.at(i, k);
            j["entries"].push_back(
                json::array({i, k, e.i2, e.j2, e.u.tau_exp, e.u.sign}));
        }
    return j;
}

inline json square_report_json(const cayley::SquareCheckReport& table_mode,
                               const cayley::SquareCheckReport& search_mode) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "square_property";
    j["table_pairs"] = table_mode.pairs;
    j["table_mismatches"] = table_mode.mismatches;
    j["search_pairs"] = search_mode.pairs;
    j["search_mismatches"] = search_mode.mismatches;
    j["ok"] = table_mode.ok() && search_mode.ok();
    return j;
}

inline json transmission_json(const protocol::Transmission& t,
                              const protocol::VerifyResult& v) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "transmission";
    j["src"] = t.src;
    j["dst"] = t.dst;
    j["data_color"] = t.data_color;
    j["check_color"] = t.check_color;
    j["payload_bytes"] = t.payload.size();
    j["delivered"] = t.delivered;
    j["path"] = json::array();
    for (const auto& h : t.path) {
        json hop = {{"from", h.from}, {"to", h.to}, {"color", h.color}, {"gen", h.gen}};
        if (h.has_check) {
            hop["check_gen"] = h.check_gen;
            hop["comp_check"] = h.comp_check;
            hop["comp_gen"] = h.comp_gen;
        }
        j["path"].push_back(hop);
    }
    j["digests"] = json::array();
    for (const auto& d : t.digests) j["digests"].push_back(hex(d));
    j["accepted"] = v.accepted;
    if (!v.accepted) j["reject_reason"] = v.reason;
    return j;
}

inline json dispersal_json(const protocol::DispersalSet& set,
                           const protocol::ReconstructResult& rec) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "dispersal";
    j["shares"] = set.g;
    j["share_bytes"] = set.shares.empty() ? 0 : set.shares[0].size();
    j["routes"] = json::array();
    for (const auto& t : set.routes)
        j["routes"].push_back({{"color", t.data_color},
                               {"hops", t.path.size()},
                               {"dst", t.dst},
                               {"final_digest", t.digests.empty() ? "" : hex(t.digests.back())}});
    j["reconstructed"] = rec.ok;
    if (!rec.ok) j["error"] = rec.error;
    return j;
}

}  // namespace ramnet::io
