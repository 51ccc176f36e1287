#include "braidlat/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>

#include "braidlat/errors.hpp"

namespace braidlat {

// ---------------------------------------------------------------- parsing ----

namespace {

constexpr long kMaxExponent = 100000;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

BraidWord parse_compact(std::string_view text) {
    BraidWord w;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (is_space(c)) continue;
        switch (c) {
            case 'a': w.push_back({1, 1}); break;
            case 'A': w.push_back({1, -1}); break;
            case 'b': w.push_back({2, 1}); break;
            case 'B': w.push_back({2, -1}); break;
            default: throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
    }
    return w;
}

BraidWord parse_verbose(std::string_view text) {
    BraidWord w;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (is_space(text[i])) { ++i; continue; }
        if (text[i] != 's') throw ParseError(i, "expected generator token 's<index>'");
        std::size_t tok = i++;
        std::size_t start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw ParseError(start, "missing generator index");
        long index = 0;
        auto [p1, ec1] = std::from_chars(text.data() + start, text.data() + i, index);
        if (ec1 != std::errc() || index < 1 || index > 2)
            throw ParseError(start, "generator index out of range (3-strand braids use s1, s2)");
        long exponent = 1;
        if (i < n && text[i] == '^') {
            ++i;
            std::size_t es = i;
            if (i < n && (text[i] == '-' || text[i] == '+')) ++i;
            std::size_t digits = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (digits == i) throw ParseError(es, "missing exponent");
            std::string_view num = text.substr(es, i - es);
            if (num.front() == '+') num.remove_prefix(1);
            auto [p2, ec2] = std::from_chars(num.data(), num.data() + num.size(), exponent);
            if (ec2 != std::errc() || exponent > kMaxExponent || exponent < -kMaxExponent)
                throw ParseError(es, "exponent out of range");
        }
        if (i < n && !is_space(text[i]))
            throw ParseError(i, "tokens must be separated by whitespace (token started at " +
                                    std::to_string(tok) + ")");
        int sign = exponent < 0 ? -1 : 1;
        for (long k = 0; k < std::abs(exponent); ++k) w.push_back({static_cast<int>(index), sign});
    }
    return w;
}

}  // namespace

BraidWord parse_braid(std::string_view text) {
    std::size_t first = 0;
    while (first < text.size() && is_space(text[first])) ++first;
    if (first == text.size()) return {};
    return text[first] == 's' ? parse_verbose(text) : parse_compact(text);
}

std::string print_braid(const BraidWord& w) {
    std::string out;
    out.reserve(w.size());
    for (const Letter& l : w) {
        char c = l.gen == 1 ? 'a' : 'b';
        out.push_back(l.sign > 0 ? c : static_cast<char>(std::toupper(c)));
    }
    return out;
}

std::string pretty_braid(const BraidWord& w) {
    static const char* kSup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        out += w[i].gen == 1 ? "σ₁" : "σ₂";
        int e = static_cast<int>(j - i) * w[i].sign;
        if (e != 1) {
            if (e < 0) out += "⁻";
            std::string digits = std::to_string(std::abs(e));
            for (char c : digits) out += kSup[c - '0'];
        }
        i = j;
    }
    return out.empty() ? "1" : out;
}

// ------------------------------------------------------- word operations ----

int exponent_sum(const BraidWord& w) {
    int s = 0;
    for (const Letter& l : w) s += l.sign;
    return s;
}

ClosurePermutation closure_components(const BraidWord& w) {
    // pos[s] is the current position of the strand that started at position s.
    std::array<int, 3> pos{0, 1, 2};
    for (const Letter& l : w) {
        int a = l.gen - 1, b = l.gen;
        for (int& p : pos) {
            if (p == a) p = b;
            else if (p == b) p = a;
        }
    }
    ClosurePermutation cp;
    cp.perm = pos;
    std::array<bool, 3> seen{};
    cp.cycle_count = 0;
    for (int s = 0; s < 3; ++s) {
        if (seen[s]) continue;
        ++cp.cycle_count;
        for (int c = s; !seen[c]; c = pos[c]) seen[c] = true;
    }
    return cp;
}

BraidWord mirror(const BraidWord& w) {
    BraidWord r = w;
    for (Letter& l : r) l.sign = -l.sign;
    return r;
}

BraidWord reverse(const BraidWord& w) { return BraidWord(w.rbegin(), w.rend()); }

BraidWord invert(const BraidWord& w) { return mirror(reverse(w)); }

BraidWord free_cyclic_reduce(const BraidWord& w) {
    BraidWord st;
    for (const Letter& l : w) {
        if (!st.empty() && st.back().gen == l.gen && st.back().sign == -l.sign) st.pop_back();
        else st.push_back(l);
    }
    std::size_t lo = 0, hi = st.size();
    while (hi - lo >= 2 && st[lo].gen == st[hi - 1].gen && st[lo].sign == -st[hi - 1].sign) {
        ++lo;
        --hi;
    }
    return BraidWord(st.begin() + static_cast<long>(lo), st.begin() + static_cast<long>(hi));
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
    BraidWord r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

BraidWord power(const BraidWord& w, int n) {
    BraidWord base = n >= 0 ? w : invert(w);
    BraidWord r;
    for (int i = 0; i < std::abs(n); ++i) r.insert(r.end(), base.begin(), base.end());
    return r;
}

BraidWord garside_delta() { return {{1, 1}, {2, 1}, {1, 1}}; }

// ------------------------------------------------------ Garside machinery ----
//
// A positive permutation braid is determined by its permutation. The map from
// words to permutations sends g1 g2 ... to T_{g1} ∘ T_{g2} ∘ ..., so braid
// multiplication of simple elements is composition (s·t)[i] = s[t[i]].

namespace {

constexpr Perm kId{0, 1, 2};
constexpr Perm kS1{1, 0, 2};
constexpr Perm kS2{0, 2, 1};
constexpr Perm kDelta{2, 1, 0};

const std::array<Perm, 6> kAllSimple = {Perm{0, 1, 2}, Perm{1, 0, 2}, Perm{0, 2, 1},
                                         Perm{1, 2, 0}, Perm{2, 0, 1}, Perm{2, 1, 0}};

Perm compose(const Perm& s, const Perm& t) {
    return {s[t[0]], s[t[1]], s[t[2]]};
}

Perm inverse(const Perm& s) {
    Perm r{};
    for (std::uint8_t i = 0; i < 3; ++i) r[s[i]] = i;
    return r;
}

int length(const Perm& s) {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (s[i] > s[j]) ++inv;
    return inv;
}

Perm tau(const Perm& s) { return compose(compose(kDelta, s), kDelta); }

Perm tau_pow(const Perm& s, int p) { return (p % 2 != 0) ? tau(s) : s; }

// ∂s with s · ∂s = Δ.
Perm complement(const Perm& s) { return compose(inverse(s), kDelta); }

bool is_prefix(const Perm& u, const Perm& t) {
    return length(u) + length(compose(inverse(u), t)) == length(t);
}

const Perm& generator_perm(int gen) { return gen == 1 ? kS1 : kS2; }

// Makes the pair (s, t) left-weighted in place; returns true if it changed.
bool left_weight(Perm& s, Perm& t) {
    int ls = length(s);
    const Perm* best = &kId;
    int best_len = 0;
    for (const Perm& u : kAllSimple) {
        int lu = length(u);
        if (lu <= best_len) continue;
        if (!is_prefix(u, t)) continue;
        if (length(compose(s, u)) != ls + lu) continue;
        best = &u;
        best_len = lu;
    }
    if (best_len == 0) return false;
    Perm u = *best;
    s = compose(s, u);
    t = compose(inverse(u), t);
    return true;
}

GarsideForm normalize(int inf, std::vector<Perm> L) {
    const std::size_t max_passes = L.size() * L.size() + 8;
    bool changed = true;
    std::size_t passes = 0;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < L.size(); ++i)
            if (left_weight(L[i], L[i + 1])) changed = true;
        BRAIDLAT_ASSERT(++passes <= max_passes, "left normal form did not stabilise");
    }
    std::size_t lead = 0;
    while (lead < L.size() && L[lead] == kDelta) ++lead;
    inf += static_cast<int>(lead);
    std::size_t end = L.size();
    while (end > lead && L[end - 1] == kId) --end;
    GarsideForm g;
    g.inf = inf;
    g.factors.assign(L.begin() + static_cast<long>(lead), L.begin() + static_cast<long>(end));
    return g;
}

GarsideForm cycling(const GarsideForm& g) {
    if (g.factors.empty()) return g;
    std::vector<Perm> L(g.factors.begin() + 1, g.factors.end());
    L.push_back(tau_pow(g.factors.front(), g.inf));
    return normalize(g.inf, std::move(L));
}

GarsideForm decycling(const GarsideForm& g) {
    if (g.factors.empty()) return g;
    std::vector<Perm> L;
    L.push_back(tau_pow(g.factors.back(), g.inf));
    L.insert(L.end(), g.factors.begin(), g.factors.end() - 1);
    return normalize(g.inf, std::move(L));
}

// s^{-1} · g · s for a simple element s.
GarsideForm conjugate_by_simple(const GarsideForm& g, const Perm& s) {
    std::vector<Perm> L;
    L.reserve(g.factors.size() + 2);
    L.push_back(tau_pow(complement(s), g.inf - 1));
    L.insert(L.end(), g.factors.begin(), g.factors.end());
    L.push_back(s);
    return normalize(g.inf - 1, std::move(L));
}

// Probe length for cycling / decycling. If inf is not maximal some cycling
// within |Δ| = 3 steps increases it; a longer probe costs little.
constexpr int kCycleProbe = 8;

GarsideForm to_super_summit(GarsideForm g) {
    bool improved = true;
    while (improved) {
        improved = false;
        GarsideForm h = g;
        for (int k = 0; k < kCycleProbe; ++k) {
            h = cycling(h);
            if (h.inf > g.inf) {
                g = h;
                improved = true;
                break;
            }
        }
        if (improved) continue;
        h = g;
        for (int k = 0; k < kCycleProbe; ++k) {
            h = decycling(h);
            if (h.sup() < g.sup() && h.inf >= g.inf) {
                g = h;
                improved = true;
                break;
            }
        }
    }
    return g;
}

std::set<GarsideForm> sss_closure(const GarsideForm& start, std::size_t budget) {
    std::set<GarsideForm> seen{start};
    std::deque<GarsideForm> queue{start};
    while (!queue.empty()) {
        GarsideForm x = std::move(queue.front());
        queue.pop_front();
        for (const Perm& s : kAllSimple) {
            if (s == kId) continue;
            GarsideForm y = conjugate_by_simple(x, s);
            if (y.inf != start.inf || y.sup() != start.sup()) continue;
            if (seen.insert(y).second) {
                if (seen.size() > budget)
                    throw BudgetExceeded("super summit set exceeds " + std::to_string(budget) +
                                         " states");
                queue.push_back(std::move(y));
            }
        }
    }
    return seen;
}

BraidWord word_of_simple(Perm s) {
    BraidWord w;
    while (s != kId) {
        for (int gen : {1, 2}) {
            const Perm& g = generator_perm(gen);
            if (is_prefix(g, s)) {
                w.push_back({gen, 1});
                s = compose(g, s);  // g is an involution
                break;
            }
        }
    }
    return w;
}

}  // namespace

GarsideForm left_normal_form(const BraidWord& w) {
    int inf = 0;
    std::vector<Perm> L;
    L.reserve(w.size());
    for (const Letter& l : w) {
        if (l.sign > 0) {
            L.push_back(generator_perm(l.gen));
        } else {
            --inf;
            for (Perm& p : L) p = tau(p);
            L.push_back(tau(complement(generator_perm(l.gen))));
        }
    }
    return normalize(inf, std::move(L));
}

BraidWord word_of(const GarsideForm& g) {
    BraidWord w = power(garside_delta(), g.inf);
    for (const Perm& p : g.factors) {
        BraidWord f = word_of_simple(p);
        w.insert(w.end(), f.begin(), f.end());
    }
    return w;
}

std::vector<GarsideForm> super_summit_set(const BraidWord& w, std::size_t budget) {
    auto s = sss_closure(to_super_summit(left_normal_form(w)), budget);
    return {s.begin(), s.end()};
}

bool garside_conjugate(const BraidWord& w1, const BraidWord& w2, std::size_t budget) {
    if (exponent_sum(w1) != exponent_sum(w2)) return false;
    GarsideForm g1 = to_super_summit(left_normal_form(w1));
    GarsideForm g2 = to_super_summit(left_normal_form(w2));
    if (g1.inf != g2.inf || g1.sup() != g2.sup()) return false;
    if (g1 == g2) return true;
    return sss_closure(g1, budget).count(g2) > 0;
}

// ------------------------------------------------------------ normal form ----

void validate(const NormalForm3& nf) {
    if (nf.d < -1 || nf.d > 1) throw PreconditionError("normal form requires d in {-1,0,1}");
    if (nf.x.empty() || nf.x.size() != nf.y.size())
        throw PreconditionError("normal form requires t >= 1 and |x| = |y|");
    long diff = 0;
    for (std::size_t i = 0; i < nf.x.size(); ++i) {
        if (nf.x[i] < 1 || nf.y[i] < 1)
            throw PreconditionError("normal form requires all x_i, y_i >= 1");
        diff += nf.x[i] - nf.y[i];
    }
    if (diff != -4L * nf.d) throw PreconditionError("normal form requires sum(x_i - y_i) = -4d");
}

NormalForm3 canonical(NormalForm3 nf) {
    const std::size_t t = nf.x.size();
    std::vector<int> best;
    std::size_t best_r = 0;
    for (std::size_t r = 0; r < t; ++r) {
        std::vector<int> seq;
        seq.reserve(2 * t);
        for (std::size_t i = 0; i < t; ++i) {
            seq.push_back(nf.x[(r + i) % t]);
            seq.push_back(nf.y[(r + i) % t]);
        }
        if (r == 0 || seq < best) {
            best = std::move(seq);
            best_r = r;
        }
    }
    std::rotate(nf.x.begin(), nf.x.begin() + static_cast<long>(best_r), nf.x.end());
    std::rotate(nf.y.begin(), nf.y.begin() + static_cast<long>(best_r), nf.y.end());
    return nf;
}

BraidWord word_of(const NormalForm3& nf) {
    BraidWord w = power({{1, 1}, {2, 1}}, 3 * nf.d);
    for (std::size_t i = 0; i < nf.x.size(); ++i) {
        w.insert(w.end(), static_cast<std::size_t>(nf.x[i]), Letter{1, 1});
        w.insert(w.end(), static_cast<std::size_t>(nf.y[i]), Letter{2, -1});
    }
    return w;
}

namespace {

// Reads Δ^{2D} Π σ1^{x_i} σ2^{-y_i} off a super summit element whose factors
// all have length 1 (a σ1 token) or 2 (a σ2^{-1} token). Returns D and the
// blocks, without checking that the twisting pattern is consistent.
struct RawGeneric {
    int D;
    std::vector<int> x, y;
};

std::optional<RawGeneric> read_generic(const GarsideForm& g) {
    const std::size_t r = g.factors.size();
    int X = 0, Y = 0;
    std::vector<int> len(r);
    for (std::size_t i = 0; i < r; ++i) {
        len[i] = length(g.factors[i]);
        if (len[i] == 1) ++X;
        else if (len[i] == 2) ++Y;
        else return std::nullopt;
    }
    if (X == 0 || Y == 0 || (g.inf + Y) % 2 != 0) return std::nullopt;
    std::size_t start = 0;
    while (!(len[start] == 1 && len[(start + r - 1) % r] == 2)) ++start;
    RawGeneric out{(g.inf + Y) / 2, {}, {}};
    std::size_t i = 0;
    while (i < r) {
        int xs = 0, ys = 0;
        while (i < r && len[(start + i) % r] == 1) { ++xs; ++i; }
        while (i < r && len[(start + i) % r] == 2) { ++ys; ++i; }
        out.x.push_back(xs);
        out.y.push_back(ys);
    }
    return out;
}

}  // namespace

NormalFormResult to_normal_form(const BraidWord& w, std::size_t budget) {
    NormalFormResult res;
    std::set<GarsideForm> sss;
    try {
        sss = sss_closure(to_super_summit(left_normal_form(w)), budget);
    } catch (const BudgetExceeded& e) {
        res.status = NormalFormStatus::BudgetExceeded;
        res.reason = e.what();
        return res;
    }
    for (const GarsideForm& g : sss) {
        auto raw = read_generic(g);
        if (!raw) continue;
        NormalForm3 cand{raw->D, raw->x, raw->y};
        GarsideForm probe = to_super_summit(left_normal_form(word_of(cand)));
        if (!sss.count(probe)) continue;
        res.generic = canonical(cand);
        int X = 0, Y = 0;
        for (int v : cand.x) X += v;
        for (int v : cand.y) Y += v;
        if (cand.d < -1 || cand.d > 1 || X - Y != -4 * cand.d) {
            res.status = NormalFormStatus::NotRepresentable;
            res.reason = "conjugate to Δ^" + std::to_string(2 * cand.d) +
                         "·Πσ1^x σ2^-y with Σx=" + std::to_string(X) + ", Σy=" +
                         std::to_string(Y) + ", outside d∈{-1,0,1} with Σ(x-y)=-4d";
            return res;
        }
        res.status = NormalFormStatus::Ok;
        res.nf = canonical(cand);
        validate(*res.nf);
        return res;
    }
    res.status = NormalFormStatus::NotRepresentable;
    res.reason = "no conjugate of the form Δ^{2d}·Πσ1^x σ2^-y with x_i, y_i >= 1";
    return res;
}

NormalFormResult closure_normal_form(const BraidWord& w, std::size_t budget) {
    NormalFormResult forward = to_normal_form(w, budget);
    if (forward.status != NormalFormStatus::Ok) return forward;
    NormalFormResult backward = to_normal_form(reverse(w), budget);
    if (backward.status != NormalFormStatus::Ok) return backward;
    auto key = [](const NormalForm3& nf) {
        std::vector<int> seq{nf.d};
        for (std::size_t i = 0; i < nf.x.size(); ++i) {
            seq.push_back(nf.x[i]);
            seq.push_back(nf.y[i]);
        }
        return seq;
    };
    return key(*backward.nf) < key(*forward.nf) ? backward : forward;
}

NormalForm3 mirror_normal_form(const NormalForm3& nf, std::size_t budget) {
    if (nf.d != -1) throw PreconditionError("mirror_normal_form requires d = -1");
    validate(nf);
    NormalFormResult r = to_normal_form(mirror(word_of(nf)), budget);
    if (r.status == NormalFormStatus::BudgetExceeded) throw BudgetExceeded(r.reason);
    BRAIDLAT_ASSERT(r.status == NormalFormStatus::Ok && r.nf->d == 1,
                    "mirror of a d=-1 normal form must have a d=1 normal form");
    return *r.nf;
}

// ------------------------------------------------- symmetric-union braids ----

BraidWord symmetric_union_braid(const BraidWord& a, bool primed) {
    const BraidWord ainv = invert(a);
    BraidWord w;
    auto push = [&w](const BraidWord& part) { w.insert(w.end(), part.begin(), part.end()); };
    if (!primed) {
        push(parse_braid("baB"));
        push(a);
        push(parse_braid("bAB"));
        push(ainv);
    } else {
        push(parse_braid("BB"));
        push(a);
        push(parse_braid("bb"));
        push(invert(garside_delta()));
        push(ainv);
        push(garside_delta());
    }
    return w;
}

Family2Braid family2_braid_from_expansions(const std::vector<ExpansionMove>& moves) {
    BraidWord a = parse_braid("Baa");
    for (ExpansionMove m : moves) {
        Letter l = m == ExpansionMove::A ? Letter{2, -1} : Letter{1, 1};
        a.insert(a.begin(), l);
    }
    return {a, symmetric_union_braid(a, true)};
}

}  // namespace braidlat
