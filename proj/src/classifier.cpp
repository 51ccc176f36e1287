#include "braidlat/classifier.hpp"

#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "braidlat/errors.hpp"

namespace braidlat {

std::string to_string(Family f) {
    switch (f) {
        case Family::NotAKnot: return "NotAKnot";
        case Family::Family1: return "Family1";
        case Family::Family2: return "Family2";
        case Family::Family3: return "Family3";
        case Family::Obstructed: return "Obstructed";
        case Family::Inconclusive: return "Inconclusive";
    }
    return "?";
}

bool bennequin_bound_ok(const BraidWord& w) { return std::abs(exponent_sum(w)) <= 2; }

bool crosscheck_family2(const BraidWord& a, const IntString& S, std::size_t budget) {
    const BraidWord beta = symmetric_union_braid(a, true);
    if (closure_components(beta).cycle_count != 1) return false;
    NormalFormResult r = to_normal_form(beta, budget);
    if (r.status == NormalFormStatus::BudgetExceeded) throw BudgetExceeded(r.reason);
    if (r.status != NormalFormStatus::Ok || r.nf->d != 0) return false;
    return dihedral_equal(weight_string(r.nf->x, r.nf->y), S);
}

AmphichiralityWitness amphichirality_witness(const NormalForm3& nf, const Family3Symmetry& sym,
                                             std::size_t budget) {
    if (!satisfies_phi_condition(nf.x, nf.y, sym))
        throw PreconditionError("symmetry does not satisfy the labelling condition");
    AmphichiralityWitness out;
    out.reversed = sym.kind == Family3Symmetry::Kind::Reflection;
    const BraidWord beta = word_of(nf);
    const BraidWord target = out.reversed ? reverse(beta) : beta;
    try {
        const bool conj = garside_conjugate(mirror(beta), target, budget);
        BRAIDLAT_ASSERT(conj, "mirror braid is not conjugate to the word predicted by the symmetry");
        out.conjugacy_checked = true;
    } catch (const BudgetExceeded&) {
        out.conjugacy_checked = false;
    }
    return out;
}

namespace {

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

void add_anchor(Verdict& v, const char* a) { v.anchors.emplace_back(a); }

Verdict inconclusive(Verdict v, std::string reason) {
    v.family = Family::Inconclusive;
    v.reason = std::move(reason);
    v.conclusion = "undecided";
    return v;
}

Verdict obstructed(Verdict v, std::vector<std::string> failed) {
    v.family = Family::Obstructed;
    v.failed_checks = std::move(failed);
    v.conclusion = "infinite concordance order";
    add_anchor(v, "trichotomy");
    return v;
}

void attach_family3(Verdict& v, const NormalForm3& nf, const Family3Symmetry& sym,
                    const ClassifierOptions& opt) {
    v.symmetry = sym;
    v.amphichirality = amphichirality_witness(nf, sym, opt.conjugacy_budget);
    add_anchor(v, "polygon-symmetry");
    add_anchor(v, "amphichirality");
}

Verdict family3(Verdict v, const NormalForm3& nf, const Family3Symmetry& sym,
                const ClassifierOptions& opt) {
    v.family = Family::Family3;
    v.conclusion = "amphichiral; finite order not decided";
    attach_family3(v, nf, sym, opt);
    return v;
}

Verdict classify_d1(Verdict v, const NormalForm3& nf, const ClassifierOptions& opt) {
    v.c_string = c_string(nf.x, nf.y);
    auto f1 = family1_check(v.c_string);
    if (!f1) return obstructed(std::move(v), {"family1_blowup"});
    std::optional<BlowupChain> qp;
    try {
        qp = quasipositivity_witness(nf.x, nf.y, opt.witness_budget);
    } catch (const BudgetExceeded& e) {
        return inconclusive(std::move(v), std::string("quasipositivity witness search: ") + e.what());
    }
    BRAIDLAT_ASSERT(qp.has_value(), "a demoted blowup string is itself a quasipositivity witness");
    BRAIDLAT_ASSERT(replay(f1->chain), "family 1 blowup chain does not replay");
    v.family = Family::Family1;
    v.family1 = std::move(f1);
    v.quasipositive_witness = std::move(qp);
    v.conclusion = "ribbon, concordance order 1";
    add_anchor(v, "blowup-chain");
    add_anchor(v, "quasipositivity");
    return v;
}

std::optional<std::vector<ExpansionMove>> single_block_moves(const NormalForm3& nf) {
    // (-2-x, -2, ..., -2) is A^(x-3) applied to (-2,-2,-5).
    if (nf.t() != 1 || nf.x[0] < 3) return std::nullopt;
    return std::vector<ExpansionMove>(static_cast<std::size_t>(nf.x[0] - 3), ExpansionMove::A);
}

Verdict classify_d0(Verdict v, const NormalForm3& nf, const ClassifierOptions& opt) {
    const int n = sum(nf.x);
    v.weight_string = weight_string(nf.x, nf.y);
    if (n == 1) {
        add_anchor(v, "base-case-unknot");
        return family3(std::move(v), nf, *family3_symmetry(nf.x, nf.y), opt);
    }
    if (n == 2) {
        BRAIDLAT_ASSERT(nf.t() == 2, "σ1²σ2⁻² closes to a link, not a knot");
        add_anchor(v, "base-case-figure-eight");
        return family3(std::move(v), nf, *family3_symmetry(nf.x, nf.y), opt);
    }

    std::optional<std::vector<ExpansionMove>> moves;
    bool expansion_budget = false;
    if (nf.t() == 1) {
        moves = single_block_moves(nf);
        BRAIDLAT_ASSERT(moves && dihedral_equal(apply_expansions(*moves), v.weight_string),
                        "single-block weight string is not an expansion of (-2,-2,-5)");
    } else {
        try {
            moves = expansion_certificate(v.weight_string);
        } catch (const BudgetExceeded&) {
            expansion_budget = true;
        }
    }
    const auto sym = family3_symmetry(nf.x, nf.y);

    if (moves) {
        const Family2Braid f2 = family2_braid_from_expansions(*moves);
        try {
            BRAIDLAT_ASSERT(crosscheck_family2(f2.a, v.weight_string, opt.conjugacy_budget),
                            "β'_a does not reproduce the weight string");
        } catch (const BudgetExceeded& e) {
            return inconclusive(std::move(v), std::string("family 2 cross-check: ") + e.what());
        }
        v.family = Family::Family2;
        v.expansion_moves = std::move(moves);
        v.a_word = f2.a;
        v.family2_braid = f2.braid;
        v.conclusion = "symmetric union, ribbon, order 1";
        add_anchor(v, "expansion-sequence");
        add_anchor(v, "symmetric-union");
        if (sym) {
            v.annotations.emplace_back("also Family3");
            attach_family3(v, nf, *sym, opt);
        }
        return v;
    }
    if (sym) {
        Verdict out = family3(std::move(v), nf, *sym, opt);
        if (expansion_budget) out.annotations.emplace_back("family 2 test exceeded its length limit");
        return out;
    }
    if (expansion_budget)
        return inconclusive(std::move(v), "expansion search exceeded its length limit and no polygon symmetry exists");
    return obstructed(std::move(v), {"expansion_certificate", "family3_symmetry"});
}

}  // namespace

Verdict classify_knot(const BraidWord& w, const ClassifierOptions& opt) {
    Verdict v;
    v.input = w;
    v.exponent_sum = exponent_sum(w);
    v.components = closure_components(w).cycle_count;
    if (v.components != 1) {
        v.family = Family::NotAKnot;
        v.reason = "closure has " + std::to_string(v.components) + " components";
        v.conclusion = "not a knot";
        return v;
    }
    if (!bennequin_bound_ok(w)) {
        add_anchor(v, "bennequin-bound");
        return obstructed(std::move(v), {"bennequin_bound"});
    }

    NormalFormResult r = to_normal_form(w, opt.conjugacy_budget);
    add_anchor(v, "murasugi-normal-form");
    if (r.status == NormalFormStatus::BudgetExceeded)
        return inconclusive(std::move(v), "normal form search: " + r.reason);
    if (r.generic) {
        const int e = 6 * r.generic->d + sum(r.generic->x) - sum(r.generic->y);
        BRAIDLAT_ASSERT(e == v.exponent_sum, "exponent sum is not a conjugacy invariant");
        if (2 * r.generic->d - e != 0) {
            v.normal_form = r.generic;
            add_anchor(v, "signature-formula");
            return obstructed(std::move(v), {"signature"});
        }
    }
    if (r.status != NormalFormStatus::Ok) return inconclusive(std::move(v), r.reason);

    NormalForm3 nf = *r.nf;
    if (nf.d == -1) {
        try {
            nf = mirror_normal_form(nf, opt.conjugacy_budget);
        } catch (const BudgetExceeded& e) {
            return inconclusive(std::move(v), std::string("mirror normal form: ") + e.what());
        }
        v.mirrored = true;
        v.annotations.emplace_back("mirror of input");
    }
    v.normal_form = nf;
    return nf.d == 1 ? classify_d1(std::move(v), nf, opt) : classify_d0(std::move(v), nf, opt);
}

std::vector<BatchEntry> batch_classify(const std::vector<KnotRecord>& records,
                                       const ClassifierOptions& opt, unsigned threads) {
    std::vector<BatchEntry> out(records.size());
    auto work = [&](std::size_t i) {
        BatchEntry& e = out[i];
        e.name = records[i].name;
        if (!records[i].row_error.empty()) {
            e.error = records[i].row_error;
            e.error_code = 2;
            return;
        }
        try {
            e.verdict = classify_knot(parse_braid(records[i].braid), opt);
        } catch (const ParseError& ex) {
            e.error = ex.what();
            e.error_code = 2;
        } catch (const std::exception& ex) {
            e.error = ex.what();
            e.error_code = 3;
        }
    };
    if (threads <= 1 || records.size() < 2) {
        for (std::size_t i = 0; i < records.size(); ++i) work(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(threads, records.size());
    for (unsigned k = 0; k < n; ++k)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < records.size();) work(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace braidlat
