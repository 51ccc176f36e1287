#include "braidlat/circular.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "braidlat/errors.hpp"

namespace braidlat {

namespace {

[[noreturn]] void violated(const std::string& what) { throw InternalError(what); }

void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::string show_vector(const DiagonalVector& v) { return format_string(v); }

CircularityReport classify_subset(const VectorSet& vs, const std::vector<int>& idx) {
    CircularityReport rep;
    const std::size_t N = vs.empty() ? 0 : vs.front().size();
    rep.wu.assign(N, 0);
    for (int i : idx)
        for (std::size_t a = 0; a < N; ++a) rep.wu[a] += vs[i][a];
    rep.wu_norm = N ? pairing(rep.wu, rep.wu) : 0;

    std::map<int, int> pos;
    for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<int>(k);
    UnionFind uf(idx.size());
    std::vector<std::vector<int>> nbrs(idx.size());
    bool pairings_ok = true;
    bool any_negative = false;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const long long p = pairing(vs[idx[a]], vs[idx[b]]);
            if (p == 0) continue;
            uf.unite(static_cast<int>(a), static_cast<int>(b));
            if (p < -1 || p > 1) pairings_ok = false;
            if (p == 1 || p == -1) {
                nbrs[a].push_back(static_cast<int>(b));
                nbrs[b].push_back(static_cast<int>(a));
            }
            if (p < 0) any_negative = true;
        }
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t a = 0; a < idx.size(); ++a) groups[uf.find(static_cast<int>(a))].push_back(static_cast<int>(a));

    bool circular = true;
    if (!pairings_ok) {
        circular = false;
        rep.reason = "some pairing lies outside {-1,0,1}";
    }
    for (std::size_t a = 0; circular && a < idx.size(); ++a) {
        if (nbrs[a].size() != 2) {
            circular = false;
            rep.reason = "vector " + std::to_string(idx[a]) + " has " +
                         std::to_string(nbrs[a].size()) + " neighbours with pairing ±1";
        }
    }
    for (const auto& [root, members] : groups) {
        if (circular && members.size() < 3) {
            circular = false;
            rep.reason = "a connected component has fewer than 3 vectors";
        }
    }
    rep.is_circular = circular && !idx.empty();
    if (idx.empty()) rep.reason = "empty set";

    for (const auto& [root, members] : groups) {
        std::vector<int> comp;
        if (rep.is_circular) {
            int prev = -1, cur = members.front();
            do {
                comp.push_back(idx[cur]);
                const auto& nb = nbrs[cur];
                int next;
                if (prev < 0) next = std::min(nb[0], nb[1]);
                else next = nb[0] == prev ? nb[1] : nb[0];
                prev = cur;
                cur = next;
            } while (cur != members.front());
        } else {
            for (int m : members) comp.push_back(idx[m]);
        }
        rep.components.push_back(std::move(comp));
    }

    if (rep.is_circular) {
        bool semipositive = true;
        for (const auto& comp : rep.components) {
            int minus = 0;
            for (std::size_t a = 0; a < comp.size(); ++a)
                for (std::size_t b = a + 1; b < comp.size(); ++b)
                    if (pairing(vs[comp[a]], vs[comp[b]]) == -1) ++minus;
            if (minus != 1) semipositive = false;
        }
        if (!any_negative) rep.flavor = Flavor::Positive;
        else if (semipositive) rep.flavor = Flavor::Semipositive;
    }
    return rep;
}

std::vector<int> all_indices(std::size_t n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

// Mutable vector set used by the pipelines: removed vectors keep their slot and
// dropped axes keep their coordinate position.
struct State {
    VectorSet vec;
    std::vector<bool> alive;
    std::vector<bool> active;
    std::vector<int> origin_component;

    std::vector<int> alive_idx() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < vec.size(); ++i)
            if (alive[i]) out.push_back(static_cast<int>(i));
        return out;
    }
    long long dot(int i, int j) const { return pairing(vec[i], vec[j]); }
    int coeff(int i, int a) const { return -vec[i][a]; }
    int axes() const { return static_cast<int>(vec.empty() ? 0 : vec.front().size()); }
    int rank() const { return static_cast<int>(std::count(active.begin(), active.end(), true)); }
    std::vector<int> support(int i) const {
        std::vector<int> s;
        for (int a = 0; a < axes(); ++a)
            if (vec[i][a] != 0) s.push_back(a);
        return s;
    }
    CircularityReport report() const { return classify_subset(vec, alive_idx()); }
    const std::vector<int>& component_of(const CircularityReport& rep, int i) const {
        for (const auto& c : rep.components)
            if (std::find(c.begin(), c.end(), i) != c.end()) return c;
        violated("vector slot not found in any component");
    }
};

struct StateProfile {
    std::vector<bool> in_w;
    std::vector<int> e_of;
    std::set<int> image;
    bool injective = true;
};

StateProfile profile(const State& s) {
    StateProfile p;
    const int n = static_cast<int>(s.vec.size());
    p.in_w.assign(n, false);
    p.e_of.assign(n, -1);
    DiagonalVector W(s.axes(), 0);
    for (int i : s.alive_idx())
        for (int a = 0; a < s.axes(); ++a) W[a] += s.vec[i][a];
    for (int i : s.alive_idx()) {
        long long dichotomy = 0;
        for (int a = 0; a < s.axes(); ++a) {
            const int c = s.coeff(i, a);
            if (!s.active[a]) {
                if (c != 0) violated("vector " + std::to_string(i) + " hits a dropped axis");
                continue;
            }
            if (c < -1 || c > 2)
                violated("coefficient v·e outside {-1,0,1,2} for vector " + std::to_string(i));
            dichotomy += static_cast<long long>(c) * (c - 1);
        }
        p.in_w[i] = pairing(W, s.vec[i]) == s.dot(i, i) + 2;
        if (dichotomy != (p.in_w[i] ? 2 : 0))
            violated("coefficient identity Σ c(c-1) fails for vector " + std::to_string(i));
        if (p.in_w[i]) {
            for (int a = 0; a < s.axes(); ++a) {
                const int c = s.coeff(i, a);
                if (c == -1 || c == 2) {
                    p.e_of[i] = a;
                    break;
                }
            }
            if (!p.image.insert(p.e_of[i]).second) p.injective = false;
        }
    }
    return p;
}

void check_adapted(const State& s, const std::string& stage) {
    for (int a = 0; a < s.axes(); ++a) {
        long long sum = 0;
        for (int i : s.alive_idx()) sum += s.vec[i][a];
        if (s.active[a] ? sum != -1 : sum != 0)
            violated(stage + ": basis is no longer adapted on axis " + std::to_string(a));
    }
    const auto rep = s.report();
    if (rep.wu_norm != -s.rank())
        violated(stage + ": Wu norm differs from minus the rank");
}

State make_state(const VectorSet& adapted, const CircularityReport& rep) {
    State s;
    s.vec = adapted;
    s.alive.assign(adapted.size(), true);
    s.active.assign(adapted.empty() ? 0 : adapted.front().size(), true);
    s.origin_component.assign(adapted.size(), -1);
    for (std::size_t c = 0; c < rep.components.size(); ++c)
        for (int i : rep.components[c]) s.origin_component[i] = static_cast<int>(c);
    return s;
}

// Shared hypothesis checks: circularity of the right flavor, full rank with
// odd index, Wu norm -N, and v·v <= -2.
CircularityReport check_common(const VectorSet& vs, Flavor want, bool need_odd_index) {
    require(!vs.empty(), "vector set is empty");
    const std::size_t N = vs.front().size();
    for (const auto& v : vs) require(v.size() == N, "vectors have different ranks");
    auto rep = classify_subset(vs, all_indices(vs.size()));
    require(rep.is_circular, "set is not circular: " + rep.reason);
    require(rep.flavor == want, want == Flavor::Positive ? "set is not positive"
                                                         : "set is not semipositive");
    require(vs.size() == N, "the number of vectors must equal the rank N");
    if (need_odd_index) {
        auto idx = odd_index(vs);
        require(idx.has_value() && *idx % 2 == 1, "span does not have finite odd index");
    }
    require(rep.wu_norm == -static_cast<long long>(N), "Wu element does not satisfy W·W = -N");
    for (std::size_t i = 0; i < vs.size(); ++i)
        require(pairing(vs[i], vs[i]) <= -2, "some vector has square > -2");
    return rep;
}

}  // namespace

CircularityReport classify(const VectorSet& vs) { return classify_subset(vs, all_indices(vs.size())); }

std::optional<std::vector<int>> adapted_basis(const VectorSet& vs) {
    require(!vs.empty(), "vector set is empty");
    const std::size_t N = vs.front().size();
    auto rep = classify(vs);
    require(rep.is_circular, "set is not circular: " + rep.reason);
    require(vs.size() == N, "adapted basis requires |V| = N");
    auto idx = odd_index(vs);
    require(idx.has_value() && *idx % 2 == 1, "span does not have finite odd index");
    require(rep.wu_norm == -static_cast<long long>(N), "Wu element does not satisfy W·W = -N");
    std::vector<int> signs(N, 1);
    for (std::size_t a = 0; a < N; ++a) {
        if (rep.wu[a] != 1 && rep.wu[a] != -1) return std::nullopt;
        signs[a] = -rep.wu[a];
    }
    return signs;
}

VectorSet apply_signs(const VectorSet& vs, const std::vector<int>& signs) {
    VectorSet out = vs;
    for (auto& v : out) {
        if (v.size() != signs.size()) throw PreconditionError("sign vector has the wrong length");
        for (std::size_t a = 0; a < v.size(); ++a) v[a] *= signs[a];
    }
    return out;
}

CoefficientProfile coefficient_profile(const VectorSet& vs, const std::vector<int>& signs) {
    VectorSet adapted = apply_signs(vs, signs);
    CircularityReport rep = classify(adapted);
    State s = make_state(adapted, rep);
    StateProfile sp = profile(s);
    CoefficientProfile out;
    for (std::size_t i = 0; i < adapted.size(); ++i) {
        std::vector<int> row;
        for (int a = 0; a < s.axes(); ++a) row.push_back(s.coeff(static_cast<int>(i), a));
        out.coeff.push_back(std::move(row));
    }
    out.in_w = sp.in_w;
    out.e_of = sp.e_of;
    out.injective = sp.injective;
    return out;
}

// ------------------------------------------------------------ semipositive --

SemipositiveReduction reduce_semipositive(const VectorSet& vs) {
    CircularityReport rep = check_common(vs, Flavor::Semipositive, true);
    for (const auto& comp : rep.components) {
        long long sum = 0;
        for (int i : comp) sum += pairing(vs[i], vs[i]) + 2;
        const long long sz = static_cast<long long>(comp.size());
        require(sum == 4 - sz, "component does not satisfy Σ(v·v+2) = 4-|D|");
        require(4 - sz <= -1, "component is too small: 4-|D| must be <= -1");
    }
    auto signs = adapted_basis(vs);
    BRAIDLAT_ASSERT(signs.has_value(), "Wu element is characteristic, so its coordinates are ±1");

    SemipositiveReduction out;
    out.signs = *signs;
    State s = make_state(apply_signs(vs, *signs), rep);
    const int k = static_cast<int>(rep.components.size());

    StateProfile p = profile(s);
    const int w_size = static_cast<int>(std::count(p.in_w.begin(), p.in_w.end(), true));
    if (w_size != static_cast<int>(vs.size()) - 2 * k)
        violated("the W-subset does not have |V| - 2k elements");

    std::vector<int> free_axes;
    for (int a = 0; a < s.axes(); ++a)
        if (!p.image.count(a)) free_axes.push_back(a);
    for (int e : free_axes) {
        std::vector<int> hitters;
        for (int i : s.alive_idx())
            if (s.coeff(i, e) != 0) hitters.push_back(i);
        if (hitters.size() != 1 || s.coeff(hitters[0], e) != 1)
            violated("unhit axis " + std::to_string(e) + " is not hit by exactly one vector with v·e = 1");
        const int u = hitters[0];
        if (s.dot(u, u) != -2) violated("the vector lifted along axis " + std::to_string(e) + " is not a (-2)-vector");
        s.vec[u][e] += 1;
        s.active[e] = false;
        out.trace.push_back({"lift", {u}, e});
        ++out.lifted;
    }
    if (out.lifted != 2 * k) violated("the number of lifted vectors differs from 2k");
    check_adapted(s, "after lifts");

    for (const auto& comp : rep.components) {
        SemipositiveComponent c;
        c.members = comp;
        for (int i : comp) c.c_string.push_back(static_cast<int>(-pairing(vs[i], vs[i])));
        for (int i : comp) c.s_string.push_back(static_cast<int>(-s.dot(i, i)));
        out.components.push_back(std::move(c));
    }

    int contractions = 0;
    while (true) {
        CircularityReport cur = s.report();
        if (!cur.is_circular || cur.flavor != Flavor::Semipositive)
            violated("(-1)-contraction destroyed semipositive circularity: " + cur.reason);
        profile(s);
        int pick = -1;
        for (int i : s.alive_idx()) {
            if (s.dot(i, i) == -1 && s.component_of(cur, i).size() >= 4) {
                pick = i;
                break;
            }
        }
        if (pick < 0) break;
        const int u = pick;
        auto sup = s.support(u);
        if (sup.size() != 1 || (s.vec[u][sup[0]] != 1 && s.vec[u][sup[0]] != -1))
            violated("(-1)-vector " + std::to_string(u) + " is not ± a basis vector");
        const int e = sup[0];
        std::vector<int> nb;
        for (int j : s.alive_idx())
            if (j != u && (s.dot(j, u) == 1 || s.dot(j, u) == -1)) nb.push_back(j);
        if (nb.size() != 2) violated("(-1)-vector does not have exactly two neighbours");
        const DiagonalVector uvec = s.vec[u];
        for (int j : nb) {
            const long long c = s.dot(j, u);
            for (int a = 0; a < s.axes(); ++a) s.vec[j][a] += static_cast<int>(c) * uvec[a];
        }
        s.alive[u] = false;
        s.active[e] = false;
        out.trace.push_back({"contract", {u, nb[0], nb[1]}, e});
        ++contractions;
        check_adapted(s, "after (-1)-contraction");
    }
    if (contractions != static_cast<int>(vs.size()) - 3 * k)
        violated("number of (-1)-contractions differs from |V| - 3k");
    CircularityReport fin = s.report();
    for (const auto& comp : fin.components) {
        if (comp.size() != 3) violated("a terminal component does not have three vectors");
        for (int i : comp)
            if (s.dot(i, i) != -1) violated("a terminal component contains a vector of square != -1");
    }

    for (auto& c : out.components) {
        auto chain = blowdown_chain(c.s_string);
        if (!chain) violated("string " + format_string(c.s_string) + " is not an iterated blowup of (0,0)");
        c.chain = *chain;
        int ones = 0;
        for (std::size_t i = 0; i < c.s_string.size(); ++i) {
            const int diff = c.c_string[i] - c.s_string[i];
            if (c.s_string[i] == 1) ++ones;
            if (diff != (c.s_string[i] == 1 ? 1 : 0))
                violated("c-string is not the s-string with its two 1's promoted to 2's");
        }
        if (ones != 2) violated("s-string does not contain exactly two 1's");
    }
    return out;
}

// ------------------------------------------------- positive, not injective --

namespace {

std::vector<int> positive_pattern_match(const State& s, const std::vector<int>& comp,
                                        std::vector<int>& axes_out) {
    // e1-e2, e3-e1, -2e3-e1 in coordinates.
    std::vector<int> order = comp;
    std::sort(order.begin(), order.end());
    do {
        const auto& t1 = s.vec[order[0]];
        const auto& t2 = s.vec[order[1]];
        const auto& t3 = s.vec[order[2]];
        auto s1 = s.support(order[0]);
        if (s1.size() != 2) continue;
        for (int flip = 0; flip < 2; ++flip) {
            const int e1 = s1[flip], e2 = s1[1 - flip];
            if (t1[e1] != 1 || t1[e2] != -1) continue;
            auto s2 = s.support(order[1]);
            if (s2.size() != 2 || t2[e1] != -1) continue;
            const int e3 = s2[0] == e1 ? s2[1] : s2[0];
            if (e3 == e2 || t2[e3] != 1) continue;
            auto s3 = s.support(order[2]);
            if (s3.size() != 2 || t3[e3] != -2 || t3[e1] != -1) continue;
            axes_out = {e1, e2, e3};
            return order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return {};
}

}  // namespace

NonInjectiveReduction reduce_positive_noninjective(const VectorSet& vs) {
    CircularityReport rep = check_common(vs, Flavor::Positive, true);
    for (const auto& comp : rep.components) {
        long long sum = 0;
        for (int i : comp) sum += pairing(vs[i], vs[i]) + 2;
        require(sum == -static_cast<long long>(comp.size()), "component does not satisfy Σ(v·v+2) = -|D|");
    }
    auto signs = adapted_basis(vs);
    BRAIDLAT_ASSERT(signs.has_value(), "Wu element is characteristic, so its coordinates are ±1");
    NonInjectiveReduction out;
    out.signs = *signs;
    State s = make_state(apply_signs(vs, *signs), rep);
    {
        StateProfile p = profile(s);
        require(!p.injective, "the coefficient map is injective");
    }

    int preferred = -1;
    const std::vector<int>* terminal = nullptr;
    CircularityReport cur;
    while (true) {
        cur = s.report();
        if (!cur.is_circular || cur.flavor != Flavor::Positive)
            violated("contraction destroyed positive circularity: " + cur.reason);
        for (const auto& comp : cur.components) {
            long long sum = 0;
            for (int i : comp) {
                if (s.dot(i, i) > -2) violated("contraction produced a vector of square > -2");
                sum += s.dot(i, i) + 2;
            }
            if (sum != -static_cast<long long>(comp.size()))
                violated("contraction broke Σ(v·v+2) = -|C|");
        }
        terminal = nullptr;
        for (const auto& comp : cur.components)
            if (comp.size() == 3) {
                terminal = &comp;
                break;
            }
        if (terminal) break;

        StateProfile p = profile(s);
        if (p.injective) violated("coefficient map became injective before a triple was reached");
        int e = -1;
        if (preferred >= 0 && s.active[preferred] && !p.image.count(preferred)) e = preferred;
        for (int a = 0; e < 0 && a < s.axes(); ++a)
            if (s.active[a] && !p.image.count(a)) e = a;
        if (e < 0) violated("no axis outside the image of the coefficient map");
        std::vector<int> hitters;
        for (int i : s.alive_idx())
            if (s.coeff(i, e) != 0) hitters.push_back(i);
        if (hitters.size() != 1 || s.coeff(hitters[0], e) != 1)
            violated("unhit axis " + std::to_string(e) + " is not hit by exactly one vector");
        const int u = hitters[0];
        const int eu = p.e_of[u];
        if (eu < 0 || s.support(u).size() != 2 || s.vec[u][eu] != 1 || s.vec[u][e] != -1)
            violated("vector " + std::to_string(u) + " is not of the form e_u - e");
        const auto& comp = s.component_of(cur, u);
        int v = -1;
        for (int j : comp) {
            if (j != u && s.coeff(j, eu) == 1 && s.support(j).size() >= 3) {
                v = j;
                break;
            }
        }
        if (v < 0) violated("no neighbour with v·e_u = 1 hitting three basis vectors");
        int w = -1;
        for (int j : comp)
            if (j != u && j != v && s.dot(j, u) == 1) w = j;
        if (w < 0 || s.dot(v, u) != 1) violated("contracted vector does not have the expected neighbours");
        s.vec[v][eu] += 1;
        s.alive[u] = false;
        s.active[e] = false;
        out.trace.push_back({"contract", {u, v, w}, e});
        preferred = eu;
        check_adapted(s, "after contraction");
    }

    out.terminal = positive_pattern_match(s, *terminal, out.terminal_axes);
    if (out.terminal.empty()) {
        std::ostringstream msg;
        msg << "terminal triple does not match {e1-e2, e3-e1, -2e3-e1}:";
        for (int i : *terminal) msg << ' ' << show_vector(s.vec[i]);
        violated(msg.str());
    }
    const int comp_id = s.origin_component[out.terminal[0]];
    out.component = rep.components[comp_id];
    for (int i : out.component) out.weight_string.push_back(static_cast<int>(pairing(vs[i], vs[i])));

    // Undo the contractions of this component, newest first, keeping an
    // oriented cycle whose head is the most recently restored (-2)-vector.
    std::vector<const TraceMove*> mine;
    for (const auto& mv : out.trace)
        if (s.origin_component[mv.indices[0]] == comp_id) mine.push_back(&mv);
    std::vector<int> cyc;
    if (mine.empty()) {
        cyc = out.terminal;
    } else {
        const int w_last = mine.back()->indices[2];
        if (w_last == out.terminal[0]) cyc = {out.terminal[0], out.terminal[1], out.terminal[2]};
        else if (w_last == out.terminal[1]) cyc = {out.terminal[1], out.terminal[0], out.terminal[2]};
        else violated("last contraction is not adjacent to a (-2)-vector of the terminal triple");
    }
    for (auto it = mine.rbegin(); it != mine.rend(); ++it) {
        const int u = (*it)->indices[0], v = (*it)->indices[1], w = (*it)->indices[2];
        const std::size_t n = cyc.size();
        if (cyc[0] != w) violated("contraction chain does not continue through the restored vector");
        if (cyc[n - 1] == v) {
            out.expansions.push_back(ExpansionMove::A);
            cyc.insert(cyc.begin(), u);
        } else if (cyc[1] == v) {
            out.expansions.push_back(ExpansionMove::B);
            std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
            cyc.insert(cyc.begin(), u);
        } else {
            violated("modified vector is not adjacent to the restored one");
        }
    }
    IntString literal;
    for (int i : cyc) literal.push_back(static_cast<int>(pairing(vs[i], vs[i])));
    if (literal != apply_expansions(out.expansions))
        violated("replayed (-2)-expansions do not reproduce the component");
    if (!dihedral_equal(literal, out.weight_string))
        violated("restored cycle is not a reading of the component");
    return out;
}

// ------------------------------------------------------ terminal patterns --

std::string to_string(TerminalKind kind) {
    switch (kind) {
        case TerminalKind::T2Pair: return "T2Pair";
        case TerminalKind::PairedCycles: return "PairedCycles";
        case TerminalKind::OddCycle: return "OddCycle";
        case TerminalKind::TripleA: return "TripleA";
        case TerminalKind::TripleB: return "TripleB";
    }
    return "?";
}

namespace {

// A pattern vector: (pattern axis, coordinate) pairs.
using PatternVector = std::vector<std::pair<int, int>>;

struct Pattern {
    TerminalKind kind;
    int m;
    int axes;
    std::vector<PatternVector> vectors;
};

// f_a - f_b - f_c with 1-based pattern axes.
PatternVector pv(std::initializer_list<int> plus, std::initializer_list<int> minus) {
    PatternVector v;
    for (int a : plus) v.emplace_back(a - 1, 1);
    for (int a : minus) v.emplace_back(a - 1, -1);
    return v;
}

Pattern t2_pair() {
    return {TerminalKind::T2Pair, 2, 6,
            {pv({1}, {2}), pv({2}, {3, 4}), pv({4}, {5, 6, 1}), pv({3}, {4, 6}), pv({6}, {5}),
             pv({5}, {1, 2, 3})}};
}

Pattern paired_cycles(int m) {
    Pattern p{m == 3 ? TerminalKind::TripleA : TerminalKind::PairedCycles, m, 2 * m, {}};
    auto f = [m](int i) { return ((i - 1) % (2 * m) + 2 * m) % (2 * m) + 1; };
    for (int i = 1; i <= m; ++i) p.vectors.push_back(pv({f(2 * i - 1)}, {f(2 * i), f(2 * i + 1)}));
    for (int i = 1; i <= m; ++i) p.vectors.push_back(pv({f(2 * i)}, {f(2 * i + 1), f(2 * i + 2)}));
    return p;
}

Pattern odd_cycle(int m) {
    const int n = 2 * m + 1;
    Pattern p{TerminalKind::OddCycle, m, n, {}};
    auto f = [n](int i) { return ((i - 1) % n + n) % n + 1; };
    for (int i = 1; i <= n; ++i) p.vectors.push_back(pv({f(2 * i - 1)}, {f(2 * i), f(2 * i + 1)}));
    return p;
}

// Ring of r triples: twins p_j - q_j - c_j, q_j - p_j - c_j and the link
// c_j - p_{j+1} - q_{j+1}.
Pattern triple_b(int r) {
    Pattern p{TerminalKind::TripleB, r, 3 * r, {}};
    auto P = [r](int j) { return 3 * (j % r) + 1; };
    auto Q = [r](int j) { return 3 * (j % r) + 2; };
    auto C = [r](int j) { return 3 * (j % r) + 3; };
    for (int j = 0; j < r; ++j) {
        p.vectors.push_back(pv({C(j)}, {P(j + 1), Q(j + 1)}));
        p.vectors.push_back(pv({P(j)}, {Q(j), C(j)}));
        p.vectors.push_back(pv({Q(j)}, {P(j), C(j)}));
    }
    return p;
}

class Matcher {
public:
    Matcher(const State& s, const std::vector<int>& targets, const Pattern& pat)
        : s_(s), targets_(targets), pat_(pat), used_(targets.size(), false),
          axis_map_(pat.axes, -1) {}

    bool run() { return assign(0); }

    std::vector<int> members;  // target slot per pattern vector
    std::vector<int> axes() const { return axis_map_; }

private:
    bool assign(std::size_t k) {
        if (k == pat_.vectors.size()) return true;
        const PatternVector& want = pat_.vectors[k];
        for (std::size_t t = 0; t < targets_.size(); ++t) {
            if (used_[t]) continue;
            const int slot = targets_[t];
            if (s_.support(slot).size() != want.size()) continue;
            used_[t] = true;
            members.push_back(slot);
            if (map_entries(slot, want, 0, k)) return true;
            members.pop_back();
            used_[t] = false;
        }
        return false;
    }

    bool map_entries(int slot, const PatternVector& want, std::size_t j, std::size_t k) {
        if (j == want.size()) return assign(k + 1);
        const auto [pa, coord] = want[j];
        if (axis_map_[pa] >= 0) {
            if (s_.vec[slot][axis_map_[pa]] != coord) return false;
            return map_entries(slot, want, j + 1, k);
        }
        for (int a = 0; a < s_.axes(); ++a) {
            if (s_.vec[slot][a] != coord || taken_.count(a)) continue;
            axis_map_[pa] = a;
            taken_.insert(a);
            if (map_entries(slot, want, j + 1, k)) return true;
            taken_.erase(a);
            axis_map_[pa] = -1;
        }
        return false;
    }

    const State& s_;
    const std::vector<int>& targets_;
    const Pattern& pat_;
    std::vector<bool> used_;
    std::vector<int> axis_map_;
    std::set<int> taken_;
};

std::optional<TerminalStructure> match_irreducible(const State& s, const std::vector<int>& members,
                                                   const CircularityReport& rep) {
    std::vector<std::size_t> sizes;
    for (const auto& comp : rep.components)
        if (std::find(members.begin(), members.end(), comp.front()) != members.end())
            sizes.push_back(comp.size());
    std::vector<Pattern> candidates;
    const int total = static_cast<int>(members.size());
    if (sizes.size() == 2 && sizes[0] == 3 && sizes[1] == 3) candidates.push_back(t2_pair());
    if (sizes.size() == 2 && sizes[0] == sizes[1] && sizes[0] >= 3)
        candidates.push_back(paired_cycles(static_cast<int>(sizes[0])));
    if (sizes.size() == 1 && total % 2 == 1) candidates.push_back(odd_cycle((total - 1) / 2));
    if (sizes.size() >= 2 && std::all_of(sizes.begin(), sizes.end(), [](std::size_t z) { return z == 3; }))
        candidates.push_back(triple_b(static_cast<int>(sizes.size())));
    for (const auto& pat : candidates) {
        if (static_cast<int>(pat.vectors.size()) != total) continue;
        Matcher m(s, members, pat);
        if (m.run()) return TerminalStructure{pat.kind, pat.m, m.members, m.axes()};
    }
    return std::nullopt;
}

std::vector<std::vector<int>> irreducible_components(const State& s) {
    auto idx = s.alive_idx();
    UnionFind uf(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (int ax = 0; ax < s.axes(); ++ax)
                if (s.vec[idx[a]][ax] != 0 && s.vec[idx[b]][ax] != 0) {
                    uf.unite(static_cast<int>(a), static_cast<int>(b));
                    break;
                }
    std::map<int, std::vector<int>> groups;
    for (std::size_t a = 0; a < idx.size(); ++a) groups[uf.find(static_cast<int>(a))].push_back(idx[a]);
    std::vector<std::vector<int>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

}  // namespace

std::vector<std::optional<TerminalStructure>> recognize_terminal(const VectorSet& z) {
    require(!z.empty(), "terminal set is empty");
    VectorSet work = z;
    const CircularityReport raw = classify(z);
    bool all_units = true;
    for (int w : raw.wu) all_units = all_units && (w == 1 || w == -1);
    if (all_units) {
        std::vector<int> signs;
        for (int w : raw.wu) signs.push_back(-w);
        work = apply_signs(z, signs);
    }
    const CircularityReport rep = classify(work);
    State s = make_state(work, rep);
    std::vector<std::optional<TerminalStructure>> out;
    for (const auto& members : irreducible_components(s)) out.push_back(match_irreducible(s, members, rep));
    return out;
}

// ----------------------------------------------------- positive, injective --

InjectiveReduction reduce_positive_injective(const VectorSet& vs) {
    CircularityReport rep = check_common(vs, Flavor::Positive, false);
    auto signs_opt = [&]() -> std::optional<std::vector<int>> {
        std::vector<int> signs;
        for (int w : rep.wu) {
            if (w != 1 && w != -1) return std::nullopt;
            signs.push_back(-w);
        }
        return signs;
    }();
    require(signs_opt.has_value(), "no canonical basis is adapted to the set");
    InjectiveReduction out;
    out.signs = *signs_opt;
    State s = make_state(apply_signs(vs, *signs_opt), rep);
    require(profile(s).injective, "the coefficient map is not injective");

    for (const auto& comp : rep.components) {
        IntString w;
        for (int i : comp) w.push_back(static_cast<int>(pairing(vs[i], vs[i])));
        out.weight_strings.push_back(std::move(w));
    }

    auto count_minus2 = [&]() {
        int c = 0;
        for (int i : s.alive_idx())
            if (s.dot(i, i) == -2) ++c;
        return c;
    };

    while (true) {
        CircularityReport cur = s.report();
        bool all_big = true;
        for (const auto& comp : cur.components) all_big = all_big && comp.size() >= 3;
        if (all_big) {
            if (!cur.is_circular || cur.flavor != Flavor::Positive)
                violated("(-2)-contraction destroyed positive circularity: " + cur.reason);
            check_adapted(s, "after (-2)-contraction");
        }
        StateProfile p = profile(s);
        if (!p.injective) violated("coefficient map stopped being injective");
        int u = -1;
        for (int i : s.alive_idx())
            if (s.dot(i, i) == -2 && s.component_of(cur, i).size() > 3) {
                u = i;
                break;
            }
        if (u < 0) break;
        const int eu = p.e_of[u];
        auto sup = s.support(u);
        if (eu < 0 || sup.size() != 2 || s.vec[u][eu] != 1)
            violated("(-2)-vector " + std::to_string(u) + " is not of the form e_u - f");
        const int f = sup[0] == eu ? sup[1] : sup[0];
        if (s.vec[u][f] != -1) violated("(-2)-vector " + std::to_string(u) + " is not of the form e_u - f");
        int v = -1, w = -1;
        for (int j : s.alive_idx()) {
            if (j == u || s.dot(j, u) != 1) continue;
            if (s.coeff(j, eu) == 1 && s.coeff(j, f) == 0) v = j;
            else if (s.coeff(j, eu) == 0 && s.coeff(j, f) == -1) w = j;
        }
        if (v < 0 || w < 0) violated("neighbours of the (-2)-vector do not have the expected shape");
        int z = -1;
        for (int j : s.alive_idx())
            if (j != v && j != u && s.coeff(j, eu) == 1) z = j;
        if (z < 0 || s.dot(z, u) != 0 || s.coeff(z, f) != 1 || s.dot(z, z) > -4)
            violated("third vector hitting e_u does not have the expected shape: u=" +
                     show_vector(s.vec[u]) + " v=" + show_vector(s.vec[v]) +
                     (z < 0 ? std::string(" z missing") : " z=" + show_vector(s.vec[z])));
        const int before = count_minus2();
        for (int a = 0; a < s.axes(); ++a) s.vec[v][a] += s.vec[u][a];
        s.vec[z][eu] += 1;
        s.alive[u] = false;
        s.active[eu] = false;
        out.trace.push_back({"minus2_contract", {u, v, z}, eu});
        if (count_minus2() != before - 1) violated("(-2)-contraction created a new (-2)-vector");
    }

    CircularityReport fin = s.report();
    for (const auto& comp : fin.components)
        for (int i : comp)
            if (s.dot(i, i) == -2 && comp.size() != 3)
                violated("a (-2)-vector survived in a component with more than three vectors");

    auto labels = labels_from_weight_string(out.weight_strings.front());
    if (!labels) violated("weight string carries no entry <= -3");
    out.x = labels->first;
    out.y = labels->second;
    const int t = static_cast<int>(out.x.size());
    if (t >= 3) {
        for (int i : s.alive_idx())
            if (s.dot(i, i) != -3) violated("terminal vector of square != -3 with t >= 3");
    }
    if (t == 2) {
        for (const auto& comp : fin.components) {
            if (comp.size() != 3) violated("terminal component of size != 3 with t = 2");
            int minus2 = 0, excess = 0;
            for (int i : comp) {
                if (s.dot(i, i) == -2) ++minus2;
                else excess += static_cast<int>(-s.dot(i, i) - 2);
            }
            if (minus2 != 1 || excess != 3) violated("terminal triple does not satisfy a_i + b_i = 3");
        }
    }

    for (const auto& members : irreducible_components(s)) {
        auto m = match_irreducible(s, members, fin);
        if (!m) {
            std::ostringstream msg;
            msg << "unrecognized terminal component:";
            for (int i : members) msg << ' ' << show_vector(s.vec[i]);
            violated(msg.str());
        }
        out.structures.push_back(*m);
    }

    for (const auto& w : out.weight_strings) {
        auto lab = labels_from_weight_string(w);
        if (!lab || !family3_symmetry(lab->first, lab->second))
            violated("component labelling " + format_string(w) + " has no polygon symmetry");
    }
    out.symmetry = family3_symmetry(out.x, out.y);
    for (const auto& st : out.structures) {
        if (st.kind != TerminalKind::OddCycle) continue;
        const int shift = st.m + 1;
        auto holds = [&](const std::vector<int>& x, const std::vector<int>& y) {
            const int n = static_cast<int>(x.size());
            for (int i = 0; i < n; ++i)
                if (y[i] != x[(i + shift) % n]) return false;
            return true;
        };
        IntString rev(out.weight_strings.front().rbegin(), out.weight_strings.front().rend());
        auto lab_rev = labels_from_weight_string(rev);
        if (!holds(out.x, out.y) && !(lab_rev && holds(lab_rev->first, lab_rev->second)))
            violated("odd terminal cycle but y_i != x_{i+m+1}");
    }
    return out;
}

}  // namespace braidlat
