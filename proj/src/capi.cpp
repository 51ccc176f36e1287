#include "braidlat/braidlat.h"

#include <cctype>
#include <cstring>
#include <new>
#include <string>

#include "braidlat/circular.hpp"
#include "braidlat/cli_io.hpp"
#include "braidlat/errors.hpp"
#include "braidlat/serialize.hpp"

struct braidlat_config {
    braidlat::Config cfg;
};

struct braidlat_word {
    braidlat::BraidWord word;
};

namespace {

using namespace braidlat;

thread_local std::string g_last_error;

braidlat_status fail(braidlat_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
braidlat_status guarded(F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        return fail(BRAIDLAT_ERR_PARSE, e.what());
    } catch (const PreconditionError& e) {
        return fail(BRAIDLAT_ERR_PRECONDITION, e.what());
    } catch (const BudgetExceeded& e) {
        return fail(BRAIDLAT_ERR_BUDGET, e.what());
    } catch (const InternalError& e) {
        return fail(BRAIDLAT_ERR_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(BRAIDLAT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BRAIDLAT_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

braidlat_status emit(const Json& j, char** out) {
    *out = dup(j.dump());
    return BRAIDLAT_OK;
}

const Config& config_of(const braidlat_config* c) {
    static const Config fallback = default_config();
    return c ? c->cfg : fallback;
}

GammaSpec spec_of(int d, const int* x, const int* y, size_t t, int k) {
    if (t > 0 && (!x || !y)) throw PreconditionError("x and y must not be null");
    GammaSpec s;
    s.d = d;
    s.x.assign(x, x + t);
    s.y.assign(y, y + t);
    s.k = k;
    validate(s);
    return s;
}

Json spec_json(const GammaSpec& s) {
    return Json{{"d", s.d}, {"x", s.x}, {"y", s.y}, {"k", s.k}};
}

Json structure_json(const TerminalStructure& st) {
    return Json{{"kind", to_string(st.kind)}, {"m", st.m}, {"members", st.members}, {"f", st.f}};
}

Json reduction_json(const GammaSpec& spec, const VectorSet& vs) {
    Json j;
    try {
        if (spec.d == 1) {
            SemipositiveReduction r = reduce_semipositive(vs);
            j["pipeline"] = "semipositive";
            j["signs"] = r.signs;
            j["lifted"] = r.lifted;
            Json comps = Json::array();
            for (const auto& c : r.components)
                comps.push_back(Json{{"members", c.members},
                                     {"c_string", c.c_string},
                                     {"s_string", c.s_string},
                                     {"blowup_chain", to_json(c.chain)}});
            j["components"] = comps;
            j["trace"] = to_json(r.trace);
            return j;
        }
        try {
            NonInjectiveReduction r = reduce_positive_noninjective(vs);
            j["pipeline"] = "positive_noninjective";
            j["signs"] = r.signs;
            j["component"] = r.component;
            j["weight_string"] = r.weight_string;
            j["expansion_moves"] = moves_to_json(r.expansions);
            j["terminal"] = r.terminal;
            j["terminal_axes"] = r.terminal_axes;
            j["trace"] = to_json(r.trace);
            return j;
        } catch (const PreconditionError& e) {
            if (std::string(e.what()).find("coefficient map is injective") == std::string::npos) throw;
        }
        InjectiveReduction r = reduce_positive_injective(vs);
        j["pipeline"] = "positive_injective";
        j["signs"] = r.signs;
        j["weight_strings"] = r.weight_strings;
        j["x"] = r.x;
        j["y"] = r.y;
        Json st = Json::array();
        for (const auto& s : r.structures) st.push_back(structure_json(s));
        j["structures"] = st;
        j["symmetry"] = r.symmetry ? to_json(*r.symmetry) : Json(nullptr);
        j["trace"] = to_json(r.trace);
        return j;
    } catch (const PreconditionError& e) {
        return Json{{"pipeline", nullptr}, {"precondition_failed", e.what()}};
    }
}

BlowupMove parse_move(std::string text) {
    for (auto& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (text == "head") return {BlowupKind::Head, 0};
    if (text == "tail") return {BlowupKind::Tail, 0};
    const std::string prefix = "interior";
    if (text.rfind(prefix, 0) == 0) {
        std::string rest = text.substr(prefix.size());
        while (!rest.empty() && (rest.front() == '(' || rest.front() == ':' || rest.front() == '='))
            rest.erase(rest.begin());
        if (!rest.empty() && rest.back() == ')') rest.pop_back();
        auto v = parse_int_list(rest);
        if (v.size() == 1) return {BlowupKind::Interior, v[0]};
    }
    throw ParseError(0, "blowup move must be head, tail or interior(i)");
}

std::vector<ExpansionMove> parse_moves(const char* text) {
    std::vector<ExpansionMove> out;
    for (std::size_t i = 0; text[i]; ++i) {
        const char c = text[i];
        if (c == 'A' || c == 'a') out.push_back(ExpansionMove::A);
        else if (c == 'B' || c == 'b') out.push_back(ExpansionMove::B);
        else if (!(std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']'))
            throw ParseError(i, std::string("unexpected character '") + c + "' in expansion moves");
    }
    return out;
}

}  // namespace

extern "C" {

const char* braidlat_version(void) { return "1.0.0"; }

const char* braidlat_last_error(void) { return g_last_error.c_str(); }

const char* braidlat_status_name(braidlat_status status) {
    switch (status) {
        case BRAIDLAT_OK: return "ok";
        case BRAIDLAT_ERR_PARSE: return "parse";
        case BRAIDLAT_ERR_PRECONDITION: return "precondition";
        case BRAIDLAT_ERR_BUDGET: return "budget";
        case BRAIDLAT_ERR_INTERNAL: return "internal";
        case BRAIDLAT_ERR_IO: return "io";
        case BRAIDLAT_ERR_ARGUMENT: return "argument";
    }
    return "unknown";
}

void braidlat_string_free(char* s) { std::free(s); }

braidlat_config* braidlat_config_new(void) {
    try {
        return new braidlat_config{default_config()};
    } catch (...) {
        g_last_error = "out of memory";
        return nullptr;
    }
}

void braidlat_config_free(braidlat_config* cfg) { delete cfg; }

braidlat_status braidlat_config_set_search_budget(braidlat_config* cfg, uint64_t nodes) {
    if (!cfg || nodes < 1) return fail(BRAIDLAT_ERR_ARGUMENT, "search budget must be >= 1");
    cfg->cfg.search_budget = static_cast<std::size_t>(nodes);
    return BRAIDLAT_OK;
}

braidlat_status braidlat_config_set_conjugacy_budget(braidlat_config* cfg, uint64_t states) {
    if (!cfg || states < 1) return fail(BRAIDLAT_ERR_ARGUMENT, "conjugacy budget must be >= 1");
    cfg->cfg.conjugacy_budget = static_cast<std::size_t>(states);
    return BRAIDLAT_OK;
}

braidlat_status braidlat_config_set_threads(braidlat_config* cfg, unsigned threads) {
    if (!cfg || threads < 1) return fail(BRAIDLAT_ERR_ARGUMENT, "thread count must be >= 1");
    cfg->cfg.threads = threads;
    return BRAIDLAT_OK;
}

braidlat_status braidlat_config_set_record_timing(braidlat_config* cfg, int enabled) {
    if (!cfg) return fail(BRAIDLAT_ERR_ARGUMENT, "null config");
    cfg->cfg.record_timing = enabled != 0;
    return BRAIDLAT_OK;
}

uint64_t braidlat_config_search_budget(const braidlat_config* cfg) {
    return config_of(cfg).search_budget;
}

braidlat_status braidlat_word_parse(const char* text, braidlat_word** out) {
    if (!text || !out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new braidlat_word{parse_braid(text)};
        return BRAIDLAT_OK;
    });
}

void braidlat_word_free(braidlat_word* w) { delete w; }

braidlat_status braidlat_word_print(const braidlat_word* w, char** out) {
    if (!w || !out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup(print_braid(w->word));
        return BRAIDLAT_OK;
    });
}

braidlat_status braidlat_word_exponent_sum(const braidlat_word* w, int* out) {
    if (!w || !out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    *out = exponent_sum(w->word);
    return BRAIDLAT_OK;
}

braidlat_status braidlat_word_components(const braidlat_word* w, int* out) {
    if (!w || !out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    *out = closure_components(w->word).cycle_count;
    return BRAIDLAT_OK;
}

braidlat_status braidlat_word_normal_form(const braidlat_config* cfg, const braidlat_word* w,
                                          char** json_out) {
    if (!w || !json_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        NormalFormResult r = closure_normal_form(w->word, config_of(cfg).conjugacy_budget);
        Json j;
        switch (r.status) {
            case NormalFormStatus::Ok: j["status"] = "ok"; break;
            case NormalFormStatus::NotRepresentable: j["status"] = "not_representable"; break;
            case NormalFormStatus::BudgetExceeded: j["status"] = "budget"; break;
        }
        j["normal_form"] = r.nf ? to_json(*r.nf) : Json(nullptr);
        if (!r.reason.empty()) j["reason"] = r.reason;
        return emit(j, json_out);
    });
}

braidlat_status braidlat_classify(const braidlat_config* cfg, const braidlat_word* w, char** json_out) {
    if (!w || !json_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] { return emit(to_json(classify_knot(w->word, config_of(cfg).classifier())), json_out); });
}

braidlat_status braidlat_classify_csv(const braidlat_config* cfg, const char* csv_text, char** jsonl_out) {
    if (!csv_text || !jsonl_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const Config& c = config_of(cfg);
        auto records = parse_knot_csv(csv_text);
        auto entries = batch_classify(records, c.classifier(), c.threads);
        std::string out;
        for (const auto& e : entries) {
            out += to_json(e).dump();
            out += '\n';
        }
        *jsonl_out = dup(out);
        return BRAIDLAT_OK;
    });
}

braidlat_status braidlat_gram(int d, const int* x, const int* y, size_t t, int k, char** json_out) {
    if (!json_out || (t > 0 && (!x || !y))) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        GramLattice g = gamma_gram(spec_of(d, x, y, t, k));
        Json j{{"spec", spec_json(g.spec)},
               {"block_size", g.block_size},
               {"gram", to_json(g.gram)},
               {"determinant", big_to_json(determinant(g.gram))},
               {"negative_definite", is_negative_definite(g.gram)},
               {"wu_norm", big_to_json(wu_norm(g.gram))},
               {"circular", gram_is_circular(g.gram)}};
        return emit(j, json_out);
    });
}

braidlat_status braidlat_signature(int d, const int* x, const int* y, size_t t, int* out) {
    if (!out || (t > 0 && (!x || !y))) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        NormalForm3 nf{d, std::vector<int>(x, x + t), std::vector<int>(y, y + t)};
        *out = signature_erle(nf);
        return BRAIDLAT_OK;
    });
}

braidlat_status braidlat_embed(const braidlat_config* cfg, int d, const int* x, const int* y, size_t t,
                               int k, int with_reduction, char** json_out) {
    if (!json_out || (t > 0 && (!x || !y))) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        GammaSpec spec = spec_of(d, x, y, t, k);
        GramLattice g = gamma_gram(spec);
        EmbeddingResult r = find_embedding(g.gram, config_of(cfg).embedding());
        Json j{{"spec", spec_json(spec)}};
        j.update(to_json(r));
        if (with_reduction && r.certificate) j["reduction"] = reduction_json(spec, r.certificate->vectors);
        return emit(j, json_out);
    });
}

braidlat_status braidlat_blowdown(const char* string_text, char** json_out) {
    if (!string_text || !json_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        IntString s = parse_int_string(string_text);
        auto chain = blowdown_chain(s);
        Json j{{"string", s}, {"iterated_blowup", chain.has_value()}};
        j["chain"] = chain ? to_json(*chain) : Json(nullptr);
        return emit(j, json_out);
    });
}

braidlat_status braidlat_blowup(const char* string_text, const char* move, char** json_out) {
    if (!string_text || !move || !json_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        IntString s = parse_int_string(string_text);
        BlowupMove m = parse_move(move);
        return emit(Json{{"string", s}, {"move", describe(m)}, {"result", blowup(s, m)}}, json_out);
    });
}

braidlat_status braidlat_family1_check(const char* string_text, char** json_out) {
    if (!string_text || !json_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        IntString c = parse_int_string(string_text);
        auto w = family1_check(c);
        Json j{{"c_string", c}, {"family1", w.has_value()}};
        if (w) {
            j["demoted"] = w->demoted;
            j["demoted_positions"] = {w->demoted_positions.first, w->demoted_positions.second};
            j["chain"] = to_json(w->chain);
        }
        return emit(j, json_out);
    });
}

braidlat_status braidlat_expand(const char* string_text, char** json_out) {
    if (!string_text || !json_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        IntString s = parse_int_string(string_text);
        auto moves = expansion_certificate(s);
        Json j{{"string", s}, {"expandable", moves.has_value()}};
        j["moves"] = moves ? moves_to_json(*moves) : Json(nullptr);
        if (moves) j["literal"] = apply_expansions(*moves);
        return emit(j, json_out);
    });
}

braidlat_status braidlat_family2gen(const braidlat_config* cfg, const char* moves_text, char** json_out) {
    if (!moves_text || !json_out) return fail(BRAIDLAT_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        auto moves = parse_moves(moves_text);
        Family2Braid f = family2_braid_from_expansions(moves);
        IntString S = apply_expansions(moves);
        Json j{{"moves", moves_to_json(moves)},
               {"weight_string", S},
               {"a_word", print_braid(f.a)},
               {"braid", print_braid(f.braid)},
               {"components", closure_components(f.braid).cycle_count}};
        try {
            j["crosscheck"] = crosscheck_family2(f.a, S, config_of(cfg).conjugacy_budget);
        } catch (const BudgetExceeded&) {
            j["crosscheck"] = nullptr;
        }
        return emit(j, json_out);
    });
}

}  // extern "C"
