#include "braidlat/serialize.hpp"

namespace braidlat {

namespace {

constexpr long long kSafeInteger = 9007199254740991LL;  // 2^53 - 1

const char* status_name(EmbeddingStatus s) {
    switch (s) {
        case EmbeddingStatus::Found: return "found";
        case EmbeddingStatus::None: return "none";
        case EmbeddingStatus::BudgetExceeded: return "budget";
    }
    return "?";
}

}  // namespace

Json big_to_json(const BigInt& v) {
    if (v <= kSafeInteger && v >= -kSafeInteger) return Json(static_cast<long long>(v));
    return Json(v.str());
}

Json to_json(const NormalForm3& nf) {
    return Json{{"d", nf.d}, {"x", nf.x}, {"y", nf.y}};
}

Json to_json(const BlowupChain& chain) {
    Json moves = Json::array();
    for (const auto& m : chain.moves) moves.push_back(describe(m));
    return Json{{"strings", chain.strings}, {"moves", moves}};
}

Json to_json(const Family3Symmetry& sym) {
    const bool rot = sym.kind == Family3Symmetry::Kind::Rotation;
    return Json{{"kind", rot ? "rotation" : "reflection"},
                {"param", sym.param},
                {"phi_V", sym.phi_V},
                {"phi_E", sym.phi_E}};
}

Json to_json(const AmphichiralityWitness& w) {
    return Json{{"direction", w.direction()}, {"conjugacy_checked", w.conjugacy_checked}};
}

Json moves_to_json(const std::vector<ExpansionMove>& moves) {
    Json out = Json::array();
    for (ExpansionMove m : moves) out.push_back(m == ExpansionMove::A ? "A" : "B");
    return out;
}

Json to_json(const Verdict& v) {
    Json j;
    j["input"] = print_braid(v.input);
    j["family"] = to_string(v.family);
    j["conclusion"] = v.conclusion;
    j["exponent_sum"] = v.exponent_sum;
    j["components"] = v.components;
    j["normal_form"] = v.normal_form ? to_json(*v.normal_form) : Json(nullptr);
    j["mirrored"] = v.mirrored;

    Json cert = Json::object();
    if (v.family1) {
        cert["c_string"] = v.c_string;
        cert["demoted"] = v.family1->demoted;
        cert["demoted_positions"] = {v.family1->demoted_positions.first,
                                     v.family1->demoted_positions.second};
        cert["blowup_chain"] = to_json(v.family1->chain);
    }
    if (v.quasipositive_witness) cert["quasipositive_witness"] = to_json(*v.quasipositive_witness);
    if (v.expansion_moves) {
        cert["weight_string"] = v.weight_string;
        cert["expansion_moves"] = moves_to_json(*v.expansion_moves);
        cert["a_word"] = print_braid(*v.a_word);
        cert["symmetric_union_braid"] = print_braid(*v.family2_braid);
    } else if (!v.weight_string.empty() && v.family != Family::Obstructed) {
        cert["weight_string"] = v.weight_string;
    }
    if (v.symmetry) cert["symmetry"] = to_json(*v.symmetry);
    if (v.amphichirality) cert["amphichirality"] = to_json(*v.amphichirality);
    j["certificates"] = cert;

    if (v.family == Family::Obstructed) {
        j["failed_checks"] = v.failed_checks;
        if (!v.c_string.empty()) j["c_string"] = v.c_string;
        if (!v.weight_string.empty()) j["weight_string"] = v.weight_string;
    }
    if (!v.reason.empty()) j["reason"] = v.reason;
    j["annotations"] = v.annotations;
    j["anchors"] = v.anchors;
    return j;
}

Json to_json(const BatchEntry& e) {
    if (e.verdict) {
        Json j{{"name", e.name}};
        j.update(to_json(*e.verdict));
        return j;
    }
    return Json{{"name", e.name},
                {"error", e.error_code == 2 ? "parse" : "internal"},
                {"message", e.error}};
}

Json to_json(const IntMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

Json to_json(const EmbeddingCertificate& cert) {
    return Json{{"gram", to_json(cert.gram)},
                {"vectors", cert.vectors},
                {"index", big_to_json(cert.index)},
                {"wu", cert.wu},
                {"verified", verify_certificate(cert)}};
}

Json to_json(const EmbeddingResult& r) {
    Json j{{"result", status_name(r.status)}};
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    Json stats{{"nodes", r.stats.nodes}, {"pruned", r.stats.pruned}};
    if (r.stats.wall_ms) stats["wall_ms"] = *r.stats.wall_ms;
    j["stats"] = stats;
    j["wu_normalized"] = r.wu_normalized;
    return j;
}

Json to_json(const std::vector<TraceMove>& trace) {
    Json out = Json::array();
    for (const auto& m : trace)
        out.push_back(Json{{"kind", m.kind}, {"indices", m.indices}, {"dropped_axis", m.dropped_axis}});
    return out;
}

}  // namespace braidlat
