#include "braidlat/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "braidlat/errors.hpp"

namespace braidlat {

long long pairing(const DiagonalVector& u, const DiagonalVector& v) {
    if (u.size() != v.size()) throw PreconditionError("vectors live in different ranks");
    long long s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += static_cast<long long>(u[i]) * v[i];
    return -s;
}

bool gram_is_circular(const IntMatrix& gram) {
    if (!is_symmetric(gram)) return false;
    for (std::size_t i = 0; i < gram.size(); ++i) {
        int degree = 0;
        for (std::size_t j = 0; j < gram.size(); ++j) {
            if (i == j) continue;
            const long long v = gram[i][j];
            if (v < -1 || v > 1) return false;
            if (v != 0) ++degree;
        }
        if (degree != 2) return false;
    }
    return gram.size() >= 3;
}

std::optional<BigInt> odd_index(const std::vector<DiagonalVector>& vectors) {
    IntMatrix m;
    for (const auto& v : vectors) {
        if (v.size() != vectors.size()) throw PreconditionError("odd_index needs a square system");
        m.emplace_back(v.begin(), v.end());
    }
    BigInt det = abs(determinant(m));
    if (det == 0) return std::nullopt;
    return det;
}

bool verify_certificate(const EmbeddingCertificate& cert) {
    const std::size_t n = cert.vectors.size();
    if (cert.gram.size() != n) return false;
    for (const auto& v : cert.vectors)
        if (v.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (cert.gram[i].size() != n) return false;
        for (std::size_t j = 0; j < n; ++j)
            if (pairing(cert.vectors[i], cert.vectors[j]) != cert.gram[i][j]) return false;
    }
    if (n == 0) return cert.wu.empty();
    auto idx = odd_index(cert.vectors);
    if (!idx || *idx != cert.index || *idx % 2 == 0) return false;
    DiagonalVector wu(n, 0);
    for (const auto& v : cert.vectors)
        for (std::size_t a = 0; a < n; ++a) wu[a] += v[a];
    return wu == cert.wu;
}

namespace {

struct Cancelled {};

class Search {
public:
    Search(const IntMatrix& gram, bool wu_mode, std::size_t budget)
        : g_(gram), n_(static_cast<int>(gram.size())), wu_(wu_mode), budget_(budget),
          axis_sum_(gram.size(), 0) {}

    std::size_t nodes = 0;
    std::size_t pruned = 0;
    std::vector<DiagonalVector> solution;
    const std::atomic<bool>* cancel = nullptr;

    std::vector<DiagonalVector> candidates(int i) {
        const int q = static_cast<int>(-g_[i][i]);
        std::vector<DiagonalVector> out;
        if (q <= 0) return out;
        const int bound = wu_ ? 2 : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(q))));
        const int lo = wu_ ? -2 : -bound;
        const int hi = wu_ ? 1 : bound;
        DiagonalVector v(static_cast<std::size_t>(n_), 0);
        auto used_part = [&](auto&& self, int axis, int rem) -> void {
            if (axis == used_) {
                for (int j = 0; j < i; ++j) {
                    if (pairing(v, vecs_[j]) != g_[i][j]) {
                        ++pruned;
                        return;
                    }
                }
                fresh_part(i, v, used_, rem, wu_ ? 1 : bound, out);
                return;
            }
            for (int c = lo; c <= hi; ++c) {
                if (c * c > rem) continue;
                v[axis] = c;
                self(self, axis + 1, rem - c * c);
            }
            v[axis] = 0;
        };
        used_part(used_part, 0, q);
        std::sort(out.begin(), out.end());
        return out;
    }

    void push(const DiagonalVector& v) {
        vecs_.push_back(v);
        used_stack_.push_back(used_);
        for (int a = 0; a < n_; ++a) {
            axis_sum_[a] += v[a];
            if (v[a] != 0) used_ = std::max(used_, a + 1);
        }
    }

    void pop() {
        for (int a = 0; a < n_; ++a) axis_sum_[a] -= vecs_.back()[a];
        vecs_.pop_back();
        used_ = used_stack_.back();
        used_stack_.pop_back();
    }

    void count_node() {
        if (++nodes > budget_) throw BudgetExceeded("embedding search exceeded node budget");
        if (cancel && cancel->load(std::memory_order_relaxed)) throw Cancelled{};
    }

    bool dfs(int i) {
        if (i == n_) return leaf();
        for (const auto& c : candidates(i)) {
            count_node();
            push(c);
            if (dfs(i + 1)) return true;
            pop();
        }
        return false;
    }

private:
    // Nonzero entries on the first unused axes; fresh axes are interchangeable,
    // so their values are taken non-increasing (and positive without Wu signs).
    void fresh_part(int i, DiagonalVector& v, int axis, int rem, int max_value,
                    std::vector<DiagonalVector>& out) {
        if (rem == 0) {
            if (wu_feasible(i, v)) out.push_back(v);
            else ++pruned;
            return;
        }
        if (axis >= n_) return;
        const int lo = wu_ ? -2 : 1;
        for (int c = max_value; c >= lo; --c) {
            if (c == 0 || c * c > rem) continue;
            v[axis] = c;
            fresh_part(i, v, axis + 1, rem - c * c, c, out);
        }
        v[axis] = 0;
    }

    // Every axis must end with coordinate sum -1; each later vector adds a
    // value in [-2, 1].
    bool wu_feasible(int i, const DiagonalVector& v) const {
        if (!wu_) return true;
        const int remaining = n_ - 1 - i;
        for (int a = 0; a < n_; ++a) {
            const int need = -1 - (axis_sum_[a] + v[a]);
            if (need < -2 * remaining || need > remaining) return false;
        }
        return true;
    }

    bool leaf() {
        auto idx = odd_index(vecs_);
        if (!idx || *idx % 2 == 0) {
            ++pruned;
            return false;
        }
        solution = vecs_;
        return true;
    }

    const IntMatrix& g_;
    int n_;
    bool wu_;
    std::size_t budget_;
    std::vector<DiagonalVector> vecs_;
    std::vector<int> axis_sum_;
    int used_ = 0;
    std::vector<int> used_stack_;
};

EmbeddingCertificate make_certificate(const IntMatrix& gram, std::vector<DiagonalVector> vecs) {
    EmbeddingCertificate cert;
    cert.gram = gram;
    cert.index = *odd_index(vecs);
    cert.wu.assign(gram.size(), 0);
    for (const auto& v : vecs)
        for (std::size_t a = 0; a < v.size(); ++a) cert.wu[a] += v[a];
    cert.vectors = std::move(vecs);
    return cert;
}

struct Task {
    std::size_t parent = 0;  // index into the level-0 candidates
    DiagonalVector second;
    bool found = false;
    bool budget_hit = false;
    bool skipped = false;
    std::size_t nodes = 0;
    std::size_t pruned = 0;
    std::vector<DiagonalVector> solution;
};

// Runs the subtree below a fixed pair of leading vectors; `nodes` includes
// the node of the second vector.
void run_task(const IntMatrix& gram, bool wu, std::size_t budget, const DiagonalVector& first,
              Task& task, const std::atomic<bool>* cancel) {
    Search s(gram, wu, budget);
    s.cancel = cancel;
    s.push(first);
    try {
        s.count_node();
        s.push(task.second);
        task.found = s.dfs(2);
    } catch (const BudgetExceeded&) {
        task.budget_hit = true;
    }
    task.nodes = s.nodes;
    task.pruned = s.pruned;
    task.solution = std::move(s.solution);
}

}  // namespace

EmbeddingResult find_embedding(const IntMatrix& gram, const EmbeddingOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (!is_symmetric(gram)) throw PreconditionError("Gram matrix must be symmetric");
    if (!is_negative_definite(gram)) throw PreconditionError("Gram matrix must be negative definite");
    const int n = static_cast<int>(gram.size());
    EmbeddingResult result;
    result.wu_normalized = n >= 3 && gram_is_circular(gram) && wu_norm(gram) == -n;
    const bool wu = result.wu_normalized;
    const std::size_t budget = options.budget;

    auto finish = [&](EmbeddingResult& r) -> EmbeddingResult& {
        if (options.record_timing)
            r.stats.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
        return r;
    };

    auto sequential = [&]() {
        Search s(gram, wu, budget);
        try {
            if (s.dfs(0)) {
                result.status = EmbeddingStatus::Found;
                result.certificate = make_certificate(gram, s.solution);
            } else {
                result.status = EmbeddingStatus::None;
            }
        } catch (const BudgetExceeded&) {
            result.status = EmbeddingStatus::BudgetExceeded;
        }
        result.stats.nodes = s.nodes;
        result.stats.pruned = s.pruned;
        return finish(result);
    };

    if (options.threads <= 1 || n < 3) return sequential();

    // Level 0 and 1 are expanded here; each (v0, v1) pair becomes a task.
    Search top(gram, wu, budget);
    const auto level0 = top.candidates(0);
    const std::size_t pruned0 = top.pruned;
    std::vector<std::size_t> pruned1(level0.size(), 0);
    std::vector<Task> tasks;
    std::vector<std::size_t> first_task(level0.size() + 1, 0);
    for (std::size_t a = 0; a < level0.size(); ++a) {
        first_task[a] = tasks.size();
        top.pruned = 0;
        top.push(level0[a]);
        for (auto& b : top.candidates(1)) {
            Task t;
            t.parent = a;
            t.second = std::move(b);
            tasks.push_back(std::move(t));
        }
        pruned1[a] = top.pruned;
        top.pop();
    }
    first_task[level0.size()] = tasks.size();

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> stop_at{std::numeric_limits<std::size_t>::max()};
    std::vector<std::atomic<bool>> cancel_flags(tasks.size());
    for (auto& f : cancel_flags) f.store(false);
    auto worker = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            Task& t = tasks[idx];
            if (idx > stop_at.load()) {
                t.skipped = true;
                continue;
            }
            try {
                run_task(gram, wu, budget, level0[t.parent], t, &cancel_flags[idx]);
            } catch (const Cancelled&) {
                t.skipped = true;
                continue;
            }
            if (t.found || t.budget_hit) {
                std::size_t cur = stop_at.load();
                while (idx < cur && !stop_at.compare_exchange_weak(cur, idx)) {
                }
                for (std::size_t j = idx + 1; j < tasks.size(); ++j) cancel_flags[j].store(true);
            }
        }
    };
    const unsigned nthreads = std::min<unsigned>(options.threads, std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // Replay the sequential order: level-0 node, its level-1 prunes, then its tasks.
    std::size_t nodes = 0;
    std::size_t pruned = pruned0;
    auto exact_budget_stats = [&](std::size_t task_idx) {
        const std::size_t remaining = budget - nodes;
        Task t;
        t.parent = tasks[task_idx].parent;
        t.second = tasks[task_idx].second;
        run_task(gram, wu, remaining, level0[t.parent], t, nullptr);
        result.status = EmbeddingStatus::BudgetExceeded;
        result.stats.nodes = nodes + t.nodes;
        result.stats.pruned = pruned + t.pruned;
    };
    for (std::size_t a = 0; a < level0.size(); ++a) {
        if (++nodes > budget) {
            result.status = EmbeddingStatus::BudgetExceeded;
            result.stats.nodes = nodes;
            result.stats.pruned = pruned;
            return finish(result);
        }
        pruned += pruned1[a];
        for (std::size_t ti = first_task[a]; ti < first_task[a + 1]; ++ti) {
            const Task& t = tasks[ti];
            BRAIDLAT_ASSERT(!t.skipped, "tasks before the first stopping task always run");
            if (t.budget_hit || nodes + t.nodes > budget) {
                exact_budget_stats(ti);
                return finish(result);
            }
            nodes += t.nodes;
            pruned += t.pruned;
            if (t.found) {
                result.status = EmbeddingStatus::Found;
                result.certificate = make_certificate(gram, t.solution);
                result.stats.nodes = nodes;
                result.stats.pruned = pruned;
                return finish(result);
            }
        }
    }
    result.status = EmbeddingStatus::None;
    result.stats.nodes = nodes;
    result.stats.pruned = pruned;
    return finish(result);
}

}  // namespace braidlat
