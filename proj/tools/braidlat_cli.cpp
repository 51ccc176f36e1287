#include <braidlat/braidlat.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kIo = 1, kInput = 2, kInternal = 3 };

struct Options {
    uint64_t budget = 0;  // 0: keep the library default (and BRAIDLAT_BUDGET)
    uint64_t conjugacy_budget = 0;
    unsigned threads = 1;
    bool text = false;
    bool timing = false;
};

struct ConfigDeleter {
    void operator()(braidlat_config* c) const { braidlat_config_free(c); }
};
using ConfigPtr = std::unique_ptr<braidlat_config, ConfigDeleter>;

struct WordDeleter {
    void operator()(braidlat_word* w) const { braidlat_word_free(w); }
};
using WordPtr = std::unique_ptr<braidlat_word, WordDeleter>;

struct Outcome {
    braidlat_status status = BRAIDLAT_OK;
    std::string payload;
};

std::vector<std::string> g_argv;

// Takes ownership of *out after the call that filled it has completed.
Outcome take(braidlat_status s, char** out) {
    Outcome o{s, {}};
    if (*out) {
        o.payload = *out;
        braidlat_string_free(*out);
        *out = nullptr;
    }
    return o;
}

Json config_json(const braidlat_config* cfg, const Options& opt) {
    return Json{{"search_budget", braidlat_config_search_budget(cfg)},
                {"conjugacy_budget", opt.conjugacy_budget ? Json(opt.conjugacy_budget) : Json("default")},
                {"threads", opt.threads}};
}

void reproducer(const braidlat_config* cfg, const Options& opt, const std::string& message) {
    Json dump{{"reproducer",
               {{"version", braidlat_version()},
                {"argv", g_argv},
                {"config", config_json(cfg, opt)},
                {"message", message}}}};
    std::cerr << dump.dump(2) << "\n";
}

// Maps a library status to an exit code, printing the error to stderr.
int report_failure(const braidlat_config* cfg, const Options& opt, braidlat_status s) {
    const std::string msg = braidlat_last_error();
    switch (s) {
        case BRAIDLAT_ERR_PARSE:
        case BRAIDLAT_ERR_PRECONDITION:
        case BRAIDLAT_ERR_ARGUMENT:
            std::cerr << "error (" << braidlat_status_name(s) << "): " << msg << "\n";
            return kInput;
        case BRAIDLAT_ERR_IO:
            std::cerr << "error (io): " << msg << "\n";
            return kIo;
        case BRAIDLAT_ERR_BUDGET:
            std::cout << Json{{"result", "budget"}, {"message", msg}}.dump() << "\n";
            return kOk;
        case BRAIDLAT_ERR_INTERNAL:
        default:
            std::cerr << "internal assertion failed: " << msg << "\n";
            reproducer(cfg, opt, msg);
            return kInternal;
    }
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Lossy rendering: one line per top-level field, nested objects indented.
void render_text(const Json& j, std::ostream& os, int depth = 0) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_null()) continue;
        if (v.is_object()) {
            os << pad << it.key() << ":\n";
            render_text(v, os, depth + 1);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << pad << it.key() << ":\n";
            for (const auto& e : v) {
                os << pad << "  -\n";
                render_text(e, os, depth + 2);
            }
        } else {
            os << pad << it.key() << ": " << scalar_text(v) << "\n";
        }
    }
}

void print_payload(const std::string& payload, const Options& opt) {
    if (!opt.text) {
        std::cout << payload << "\n";
        return;
    }
    std::cout << "# text output is lossy and not a stable format\n";
    const Json j = Json::parse(payload);
    if (j.is_object()) render_text(j, std::cout);
    else std::cout << scalar_text(j) << "\n";
}

int finish(const braidlat_config* cfg, const Options& opt, const Outcome& o) {
    if (o.status != BRAIDLAT_OK) return report_failure(cfg, opt, o.status);
    print_payload(o.payload, opt);
    return kOk;
}

struct SpecArgs {
    int d = 0;
    std::vector<int> x;
    std::vector<int> y;
    int k = 1;
};

void add_spec_options(CLI::App* cmd, SpecArgs& s, bool with_k) {
    cmd->add_option("--d", s.d, "Full-twist exponent d")->required();
    cmd->add_option("--x", s.x, "Comma-separated exponents x_i")->required()->delimiter(',');
    cmd->add_option("--y", s.y, "Comma-separated exponents y_i")->required()->delimiter(',');
    if (with_k) cmd->add_option("--k", s.k, "Number of orthogonal copies")->check(CLI::PositiveNumber);
}

bool same_length(const SpecArgs& s) {
    if (s.x.size() == s.y.size()) return true;
    std::cerr << "error (argument): --x and --y must have the same length\n";
    return false;
}

std::string join_words(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return false;
    out = ss.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    g_argv.assign(argv, argv + argc);

    CLI::App app{"Concordance classification of 3-braid knots and lattice embedding certificates", "braidlat"};
    app.set_version_flag("--version", std::string(braidlat_version()));
    app.require_subcommand(1);

    Options opt;
    app.add_option("--budget", opt.budget, "Embedding search node budget (overrides BRAIDLAT_BUDGET)")
        ->check(CLI::PositiveNumber);
    app.add_option("--conjugacy-budget", opt.conjugacy_budget, "Conjugacy search state budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--text", opt.text, "Human-readable output instead of JSON");
    app.add_flag("--timing", opt.timing, "Include wall-clock time in search statistics");

    std::vector<std::string> word_parts;
    auto* classify = app.add_subcommand("classify", "Classify the closure of a 3-braid");
    classify->add_option("word", word_parts, "Braid word (aBab... or s1 s2^-1 ...)")->required();

    std::vector<std::string> nf_parts;
    auto* normal = app.add_subcommand("normal-form", "Canonical normal form of a 3-braid closure");
    normal->add_option("word", nf_parts, "Braid word")->required();

    SpecArgs embed_spec;
    bool reduce = false;
    auto* embed = app.add_subcommand("embed", "Search for an embedding of a cycle lattice");
    add_spec_options(embed, embed_spec, true);
    embed->add_flag("--reduce", reduce, "Run the structure reduction on a found certificate");

    std::string csv_path;
    auto* batch = app.add_subcommand("batch", "Classify every row of a name,braid CSV file");
    batch->add_option("csv", csv_path, "CSV file path")->required();

    std::string blowup_string;
    bool blowup_check = false;
    bool blowup_family1 = false;
    std::string blowup_move;
    auto* blowup = app.add_subcommand("blowup", "Blowup moves and blowdown chains");
    blowup->add_option("string", blowup_string, "Integer string such as [5,1,2,2,2,2,1]")->required();
    auto* check_flag = blowup->add_flag("--check", blowup_check, "Blow down to (0,0) and print the chain");
    blowup->add_flag("--family1", blowup_family1, "Test a c-string for a demotion that is an iterated blowup");
    blowup->add_option("--move", blowup_move, "Apply one move: head, tail or interior(i)")->excludes(check_flag);

    std::string expand_string;
    auto* expand = app.add_subcommand("expand", "Find a (-2)-expansion sequence from (-2,-2,-5)");
    expand->add_option("string", expand_string, "Weight string such as [-2,-3,-3,-4]")->required();

    SpecArgs gram_spec;
    auto* gram = app.add_subcommand("gram", "Gram matrix and invariants of a cycle lattice");
    add_spec_options(gram, gram_spec, true);

    SpecArgs sig_spec;
    auto* sig = app.add_subcommand("sig", "Signature of a normal-form 3-braid closure");
    add_spec_options(sig, sig_spec, false);

    std::vector<std::string> move_parts;
    auto* f2 = app.add_subcommand("family2gen", "Symmetric-union braid from an expansion sequence");
    f2->add_option("moves", move_parts, "Moves A and B, e.g. A B")->required();

    CLI11_PARSE(app, argc, argv);

    ConfigPtr cfg(braidlat_config_new());
    if (!cfg) {
        std::cerr << "error: " << braidlat_last_error() << "\n";
        return kInternal;
    }
    if (opt.budget) braidlat_config_set_search_budget(cfg.get(), opt.budget);
    if (opt.conjugacy_budget) braidlat_config_set_conjugacy_budget(cfg.get(), opt.conjugacy_budget);
    braidlat_config_set_threads(cfg.get(), opt.threads);
    braidlat_config_set_record_timing(cfg.get(), opt.timing ? 1 : 0);

    auto with_word = [&](const std::vector<std::string>& parts,
                         const std::function<braidlat_status(const braidlat_word*, char**)>& fn) {
        braidlat_word* raw = nullptr;
        const braidlat_status s = braidlat_word_parse(join_words(parts).c_str(), &raw);
        if (s != BRAIDLAT_OK) return Outcome{s, {}};
        WordPtr w(raw);
        char* out = nullptr;
        return take(fn(w.get(), &out), &out);
    };

    char* out = nullptr;
    if (*classify) {
        return finish(cfg.get(), opt, with_word(word_parts, [&](const braidlat_word* w, char** o) {
                          return braidlat_classify(cfg.get(), w, o);
                      }));
    }
    if (*normal) {
        return finish(cfg.get(), opt, with_word(nf_parts, [&](const braidlat_word* w, char** o) {
                          return braidlat_word_normal_form(cfg.get(), w, o);
                      }));
    }
    if (*embed) {
        if (!same_length(embed_spec)) return kInput;
        const auto& s = embed_spec;
        return finish(cfg.get(), opt,
                      take(braidlat_embed(cfg.get(), s.d, s.x.data(), s.y.data(), s.x.size(), s.k,
                                          reduce ? 1 : 0, &out),
                           &out));
    }
    if (*gram) {
        if (!same_length(gram_spec)) return kInput;
        const auto& s = gram_spec;
        return finish(cfg.get(), opt,
                      take(braidlat_gram(s.d, s.x.data(), s.y.data(), s.x.size(), s.k, &out), &out));
    }
    if (*sig) {
        if (!same_length(sig_spec)) return kInput;
        const auto& s = sig_spec;
        int value = 0;
        const braidlat_status st = braidlat_signature(s.d, s.x.data(), s.y.data(), s.x.size(), &value);
        if (st != BRAIDLAT_OK) return report_failure(cfg.get(), opt, st);
        if (opt.text) std::cout << value << "\n";
        else std::cout << Json{{"d", s.d}, {"x", s.x}, {"y", s.y}, {"signature", value}}.dump() << "\n";
        return kOk;
    }
    if (*blowup) {
        const char* str = blowup_string.c_str();
        braidlat_status st;
        if (!blowup_move.empty()) st = braidlat_blowup(str, blowup_move.c_str(), &out);
        else if (blowup_family1) st = braidlat_family1_check(str, &out);
        else st = braidlat_blowdown(str, &out);
        return finish(cfg.get(), opt, take(st, &out));
    }
    if (*expand) {
        return finish(cfg.get(), opt, take(braidlat_expand(expand_string.c_str(), &out), &out));
    }
    if (*f2) {
        return finish(cfg.get(), opt,
                      take(braidlat_family2gen(cfg.get(), join_words(move_parts).c_str(), &out), &out));
    }
    if (*batch) {
        std::string text;
        if (!read_file(csv_path, text)) {
            std::cerr << "error (io): cannot read " << csv_path << "\n";
            return kIo;
        }
        const braidlat_status st = braidlat_classify_csv(cfg.get(), text.c_str(), &out);
        Outcome o = take(st, &out);
        if (o.status != BRAIDLAT_OK) return report_failure(cfg.get(), opt, o.status);
        std::cout << o.payload;
        std::istringstream lines(o.payload);
        int code = kOk;
        for (std::string line; std::getline(lines, line);) {
            const Json row = Json::parse(line);
            if (row.contains("error") && row["error"] == "internal") {
                reproducer(cfg.get(), opt, row.value("name", "") + ": " + row.value("message", ""));
                code = kInternal;
            }
        }
        return code;
    }
    return kOk;
}
