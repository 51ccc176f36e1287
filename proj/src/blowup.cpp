#include "braidlat/blowup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "braidlat/errors.hpp"

namespace braidlat {

std::string format_string(const IntString& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out + "]";
}

IntString parse_int_string(std::string_view text) {
    IntString out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    bool bracket = i < text.size() && text[i] == '[';
    if (bracket) ++i;
    skip();
    if (bracket && i < text.size() && text[i] == ']') {
        ++i;
        skip();
        if (i != text.size()) throw ParseError(i, "trailing characters");
        return out;
    }
    while (true) {
        skip();
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        std::string_view num = text.substr(start, i - start);
        if (!num.empty() && num.front() == '+') num.remove_prefix(1);
        int v = 0;
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
        if (num.empty() || ec != std::errc() || p != num.data() + num.size())
            throw ParseError(start, "expected integer");
        out.push_back(v);
        skip();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        break;
    }
    if (bracket) {
        if (i >= text.size() || text[i] != ']') throw ParseError(i, "expected ']'");
        ++i;
    }
    skip();
    if (i != text.size()) throw ParseError(i, "trailing characters");
    return out;
}

IntString dihedral_canonical(const IntString& s) {
    const std::size_t n = s.size();
    IntString best = s;
    IntString buf(n);
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t i = 0; i < n; ++i)
                buf[i] = dir == 0 ? s[(r + i) % n] : s[(r + n - i) % n];
            if (buf < best) best = buf;
        }
    }
    return best;
}

bool dihedral_equal(const IntString& a, const IntString& b) {
    return a.size() == b.size() && dihedral_canonical(a) == dihedral_canonical(b);
}

// --------------------------------------------------------------- blowups ----

std::string describe(const BlowupMove& m) {
    switch (m.kind) {
        case BlowupKind::Head: return "head";
        case BlowupKind::Tail: return "tail";
        case BlowupKind::Interior: return "interior(" + std::to_string(m.index) + ")";
    }
    return "?";
}

IntString blowup(const IntString& z, BlowupMove move) {
    const int k = static_cast<int>(z.size());
    if (k < 2) throw PreconditionError("blowups are defined on strings of length >= 2");
    IntString r;
    r.reserve(z.size() + 1);
    switch (move.kind) {
        case BlowupKind::Head:
            r.push_back(1);
            r.insert(r.end(), z.begin(), z.end());
            r[1] += 1;
            r.back() += 1;
            break;
        case BlowupKind::Tail:
            r = z;
            r.front() += 1;
            r.back() += 1;
            r.push_back(1);
            break;
        case BlowupKind::Interior:
            if (move.index < 1 || move.index >= k)
                throw PreconditionError("interior blowup index must satisfy 1 <= i < k");
            r = z;
            r[move.index - 1] += 1;
            r[move.index] += 1;
            r.insert(r.begin() + move.index, 1);
            break;
    }
    return r;
}

bool replay(const BlowupChain& chain) {
    if (chain.strings.empty() || chain.strings.front() != IntString{0, 0}) return false;
    if (chain.moves.size() + 1 != chain.strings.size()) return false;
    for (std::size_t i = 0; i < chain.moves.size(); ++i) {
        try {
            if (blowup(chain.strings[i], chain.moves[i]) != chain.strings[i + 1]) return false;
        } catch (const PreconditionError&) {
            return false;
        }
    }
    return true;
}

namespace {

long sum_of(const IntString& s) { return std::accumulate(s.begin(), s.end(), 0L); }

// Removes the entry at p and decrements its two cyclic neighbours; returns the
// blowup move that reverses this.
IntString blow_down_at(const IntString& s, std::size_t p, BlowupMove& inverse) {
    const std::size_t L = s.size();
    IntString r = s;
    r[(p + L - 1) % L] -= 1;
    r[(p + 1) % L] -= 1;
    r.erase(r.begin() + static_cast<long>(p));
    if (p == 0) inverse = {BlowupKind::Head, 0};
    else if (p == L - 1) inverse = {BlowupKind::Tail, 0};
    else inverse = {BlowupKind::Interior, static_cast<int>(p)};
    return r;
}

bool blowdown_search(const IntString& s, std::set<IntString>& dead, BlowupChain& out) {
    const std::size_t L = s.size();
    if (L < 2) return false;
    if (L == 2) {
        if (s != IntString{0, 0}) return false;
        out.strings.push_back(s);
        return true;
    }
    if (sum_of(s) != 3L * static_cast<long>(L) - 6) return false;
    if (dead.count(s)) return false;
    for (std::size_t p = 0; p < L; ++p) {
        if (s[p] != 1) continue;
        if (s[(p + L - 1) % L] < 1 || s[(p + 1) % L] < 1) continue;
        BlowupMove inv;
        IntString smaller = blow_down_at(s, p, inv);
        if (blowdown_search(smaller, dead, out)) {
            out.strings.push_back(s);
            out.moves.push_back(inv);
            return true;
        }
    }
    dead.insert(s);
    return false;
}

}  // namespace

std::optional<BlowupChain> blowdown_chain(const IntString& s) {
    for (int v : s)
        if (v < 0) return std::nullopt;
    std::set<IntString> dead;
    BlowupChain chain;
    if (!blowdown_search(s, dead, chain)) return std::nullopt;
    return chain;
}

std::optional<Family1Witness> family1_check(const IntString& c) {
    const long L = static_cast<long>(c.size());
    if (L < 2 || sum_of(c) - 2 != 3 * L - 6) return std::nullopt;
    const long ones = std::count(c.begin(), c.end(), 1);
    if (ones != 0) return std::nullopt;  // the demoted string must hold exactly two 1's
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 2) continue;
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (c[j] != 2) continue;
            IntString s = c;
            s[i] = s[j] = 1;
            if (auto chain = blowdown_chain(s))
                return Family1Witness{*chain, {static_cast<int>(i), static_cast<int>(j)}, s};
        }
    }
    return std::nullopt;
}

IntString c_string(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) throw PreconditionError("x and y must have equal length");
    IntString c;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 1 || y[i] < 1) throw PreconditionError("x_i, y_i must be >= 1");
        c.push_back(x[i] + 2);
        c.insert(c.end(), static_cast<std::size_t>(y[i] - 1), 2);
    }
    return c;
}

namespace {

struct WitnessSearch {
    std::size_t budget;
    std::size_t nodes = 0;
    std::set<IntString> dead;

    // Finds s <= c (an iterated blowup of (0,0)) and returns its chain.
    bool run(const IntString& c, BlowupChain& out) {
        if (++nodes > budget)
            throw BudgetExceeded("quasi-positivity witness search exceeded " +
                                 std::to_string(budget) + " nodes");
        const std::size_t L = c.size();
        for (int v : c)
            if (v < 0) return false;
        if (L == 2) {
            out.strings.push_back({0, 0});
            return true;
        }
        if (sum_of(c) < 3L * static_cast<long>(L) - 6) return false;
        if (dead.count(c)) return false;
        for (std::size_t p = 0; p < L; ++p) {
            if (c[p] < 1) continue;
            BlowupMove mv;
            IntString reduced = blow_down_at(c, p, mv);
            BlowupChain sub;
            if (run(reduced, sub)) {
                IntString s = blowup(sub.strings.back(), mv);
                sub.strings.push_back(s);
                sub.moves.push_back(mv);
                out = std::move(sub);
                return true;
            }
        }
        dead.insert(c);
        return false;
    }
};

}  // namespace

std::optional<BlowupChain> quasipositivity_witness(const std::vector<int>& x,
                                                   const std::vector<int>& y,
                                                   std::size_t budget) {
    IntString c = c_string(x, y);
    if (c.size() < 2) return std::nullopt;
    WitnessSearch search;
    search.budget = budget;
    BlowupChain chain;
    if (!search.run(c, chain)) return std::nullopt;
    return chain;
}

// ------------------------------------------------------- (-2)-expansions ----

IntString minus2_expand(const IntString& m, ExpansionMove variant) {
    if (m.size() < 2) throw PreconditionError("(-2)-expansion needs a string of length >= 2");
    if (m.front() != -2) throw PreconditionError("(-2)-expansion requires first entry -2");
    IntString r;
    r.reserve(m.size() + 1);
    r.push_back(-2);
    if (variant == ExpansionMove::A) {
        r.insert(r.end(), m.begin(), m.end());
        r.back() -= 1;
    } else {
        r.push_back(m[1] - 1);
        r.insert(r.end(), m.begin() + 2, m.end());
        r.push_back(m.front());
    }
    return r;
}

IntString apply_expansions(const std::vector<ExpansionMove>& moves) {
    IntString s{-2, -2, -5};
    for (ExpansionMove mv : moves) s = minus2_expand(s, mv);
    return s;
}

std::string format_moves(const std::vector<ExpansionMove>& moves) {
    std::string out = "[";
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (i) out += ',';
        out += moves[i] == ExpansionMove::A ? "A" : "B";
    }
    return out + "]";
}

namespace {

constexpr std::size_t kMaxExpansionLength = 24;

// For each length, the first move sequence (in A < B lexicographic order)
// reaching each dihedral class.
using ExpansionTable = std::map<IntString, std::vector<ExpansionMove>>;

const ExpansionTable& expansion_table(std::size_t length) {
    static std::mutex mu;
    static std::map<std::size_t, ExpansionTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(length);
    if (it != cache.end()) return it->second;
    ExpansionTable table;
    const std::size_t depth = length - 3;
    std::vector<ExpansionMove> moves(depth, ExpansionMove::A);
    std::vector<IntString> stack{IntString{-2, -2, -5}};
    // Depth-first enumeration in lexicographic move order.
    auto rec = [&](auto&& self, std::size_t level) -> void {
        if (level == depth) {
            table.emplace(dihedral_canonical(stack.back()), moves);
            return;
        }
        for (ExpansionMove mv : {ExpansionMove::A, ExpansionMove::B}) {
            moves[level] = mv;
            IntString next = minus2_expand(stack.back(), mv);
            BRAIDLAT_ASSERT(sum_of(next) == -3L * static_cast<long>(next.size()),
                            "expansion strings satisfy sum(m_i) = 3 * length");
            stack.push_back(std::move(next));
            self(self, level + 1);
            stack.pop_back();
        }
    };
    rec(rec, 0);
    return cache.emplace(length, std::move(table)).first->second;
}

}  // namespace

std::optional<std::vector<ExpansionMove>> expansion_certificate(const IntString& S) {
    const std::size_t L = S.size();
    if (L < 3) return std::nullopt;
    if (sum_of(S) != -3L * static_cast<long>(L)) return std::nullopt;
    for (int v : S)
        if (v > -2) return std::nullopt;
    if (L > kMaxExpansionLength)
        throw BudgetExceeded("expansion enumeration limited to length " +
                             std::to_string(kMaxExpansionLength));
    const ExpansionTable& table = expansion_table(L);
    auto it = table.find(dihedral_canonical(S));
    if (it == table.end()) return std::nullopt;
    return it->second;
}

IntString weight_string(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) throw PreconditionError("x and y must have equal length");
    IntString w;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 1 || y[i] < 1) throw PreconditionError("x_i, y_i must be >= 1");
        w.push_back(-2 - x[i]);
        w.insert(w.end(), static_cast<std::size_t>(y[i] - 1), -2);
    }
    return w;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> labels_from_weight_string(
    const IntString& w) {
    const std::size_t n = w.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] > -2) return std::nullopt;
        if (w[i] <= -3 && start == n) start = i;
    }
    if (start == n) return std::nullopt;
    std::vector<int> x, y;
    for (std::size_t k = 0; k < n; ++k) {
        const int v = w[(start + k) % n];
        if (v <= -3) {
            x.push_back(-2 - v);
            y.push_back(1);
        } else {
            y.back() += 1;
        }
    }
    return std::make_pair(std::move(x), std::move(y));
}

// ------------------------------------------------------- polygon symmetry ----

bool satisfies_phi_condition(const std::vector<int>& x, const std::vector<int>& y,
                             const Family3Symmetry& s) {
    const int t = static_cast<int>(x.size());
    if (t == 0 || static_cast<int>(y.size()) != t) return false;
    if (static_cast<int>(s.phi_V.size()) != t || static_cast<int>(s.phi_E.size()) != t)
        return false;
    for (int i = 0; i < t; ++i) {
        if (x[i] != y[s.phi_E[i]]) return false;
        if (y[i] != x[s.phi_V[(i + 1) % t]]) return false;
    }
    return true;
}

std::optional<Family3Symmetry> family3_symmetry(const std::vector<int>& x,
                                                const std::vector<int>& y) {
    const int t = static_cast<int>(x.size());
    if (t == 0 || static_cast<int>(y.size()) != t)
        throw PreconditionError("polygon labelling needs t >= 1 and |x| = |y|");
    auto mod = [t](int v) { return ((v % t) + t) % t; };
    for (int kind = 0; kind < 2; ++kind) {
        for (int p = 0; p < t; ++p) {
            Family3Symmetry s;
            s.kind = kind == 0 ? Family3Symmetry::Kind::Rotation : Family3Symmetry::Kind::Reflection;
            s.param = p;
            for (int i = 0; i < t; ++i) {
                if (kind == 0) {
                    s.phi_V.push_back(mod(i + p));
                    s.phi_E.push_back(mod(i + p));
                } else {
                    s.phi_V.push_back(mod(p - i));
                    s.phi_E.push_back(mod(p - i - 1));
                }
            }
            if (satisfies_phi_condition(x, y, s)) return s;
        }
    }
    return std::nullopt;
}

}  // namespace braidlat
