#include "braidlat/cli_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "braidlat/errors.hpp"

namespace braidlat {

ClassifierOptions Config::classifier() const {
    ClassifierOptions o;
    o.conjugacy_budget = conjugacy_budget;
    o.witness_budget = search_budget;
    return o;
}

EmbeddingOptions Config::embedding() const { return {search_budget, threads, record_timing}; }

Config default_config() {
    Config c;
    if (const char* env = std::getenv("BRAIDLAT_BUDGET")) {
        std::string_view s(env);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec == std::errc() && ptr == s.data() + s.size() && value >= 1) c.search_budget = value;
    }
    return c;
}

namespace {

struct CsvReader {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }

    // Reads one record; returns false at end of input.
    bool next(std::vector<std::string>& fields) {
        fields.clear();
        if (done()) return false;
        std::string field;
        bool quoted = false;
        while (pos < text.size()) {
            const char c = text[pos];
            if (quoted) {
                if (c == '"') {
                    if (pos + 1 < text.size() && text[pos + 1] == '"') {
                        field += '"';
                        pos += 2;
                        continue;
                    }
                    quoted = false;
                } else {
                    field += c;
                }
                ++pos;
                continue;
            }
            if (c == '"' && field.empty()) {
                quoted = true;
                ++pos;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
                ++pos;
            } else if (c == '\n' || c == '\r') {
                if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
                ++pos;
                break;
            } else {
                field += c;
                ++pos;
            }
        }
        if (quoted) throw ParseError(pos, "unterminated quoted CSV field");
        fields.push_back(std::move(field));
        return true;
    }
};

std::string trim(std::string s) {
    auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && sp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && sp(s[i])) ++i;
    return s.substr(i);
}

}  // namespace

std::vector<KnotRecord> parse_knot_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    CsvReader reader{text};
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ParseError(0, "CSV is empty, expected header name,braid");
    for (auto& f : fields) f = trim(f);
    if (fields.size() < 2 || fields[0] != "name" || fields[1] != "braid" ||
        (fields.size() == 3 && fields[2] != "expected") || fields.size() > 3)
        throw ParseError(0, "CSV header must be name,braid[,expected]");
    const bool has_expected = fields.size() == 3;
    std::vector<KnotRecord> out;
    while (true) {
        if (!reader.next(fields)) break;
        if (fields.size() == 1 && trim(fields[0]).empty()) continue;
        KnotRecord r;
        r.name = trim(fields[0]);
        if (fields.size() >= 2) r.braid = fields[1];
        else r.row_error = "row has no braid column";
        if (has_expected && fields.size() >= 3 && !trim(fields[2]).empty()) r.expected = trim(fields[2]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i < text.size() && (text[i] == '[' || text[i] == '(')) ++i;
    while (true) {
        skip();
        if (i >= text.size() || text[i] == ']' || text[i] == ')') break;
        int v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
        if (ec != std::errc()) throw ParseError(i, "expected an integer");
        out.push_back(v);
        i = static_cast<std::size_t>(ptr - text.data());
        skip();
        if (i < text.size() && text[i] == ',') ++i;
        else break;
    }
    skip();
    if (i < text.size() && (text[i] == ']' || text[i] == ')')) ++i;
    skip();
    if (i != text.size()) throw ParseError(i, "unexpected character in integer list");
    if (out.empty()) throw ParseError(0, "empty integer list");
    return out;
}

}  // namespace braidlat
