#include "dtspn/atsp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "dtspn/errors.hpp"
#include "dtspn/util.hpp"

namespace dtspn {

namespace {

using Clock = std::chrono::steady_clock;

struct TourState {
    std::vector<int> order;
    std::vector<int> pos;  // pos[node] = index in order

    void rebuild_pos() {
        pos.resize(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] =
            static_cast<int>(i);
    }
    int succ(int node, int n) const { return order[static_cast<std::size_t>((pos[static_cast<std::size_t>(node)] + 1) % n)]; }
};

std::vector<int> nearest_neighbor(const AtspInstance& inst, int start) {
    const int n = inst.n;
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    int cur = start;
    visited[static_cast<std::size_t>(cur)] = true;
    order.push_back(cur);
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_w = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (visited[static_cast<std::size_t>(j)]) continue;
            const double w = inst.at(cur, j);
            if (w < best_w) {
                best_w = w;
                best = j;
            }
        }
        visited[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
        cur = best;
    }
    return order;
}

// Candidate lists: K cheapest successors and predecessors per node.
struct Candidates {
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;
};

Candidates build_candidates(const AtspInstance& inst, int k) {
    const int n = inst.n;
    Candidates c;
    c.out.resize(static_cast<std::size_t>(n));
    c.in.resize(static_cast<std::size_t>(n));
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        idx.clear();
        for (int j = 0; j < n; ++j)
            if (j != i) idx.push_back(j);
        const int take = std::min<int>(k, static_cast<int>(idx.size()));
        std::partial_sort(idx.begin(), idx.begin() + take, idx.end(), [&](int a, int b) {
            const double wa = inst.at(i, a), wb = inst.at(i, b);
            return wa < wb || (wa == wb && a < b);
        });
        c.out[static_cast<std::size_t>(i)].assign(idx.begin(), idx.begin() + take);

        idx.clear();
        for (int j = 0; j < n; ++j)
            if (j != i) idx.push_back(j);
        std::partial_sort(idx.begin(), idx.begin() + take, idx.end(), [&](int a, int b) {
            const double wa = inst.at(a, i), wb = inst.at(b, i);
            return wa < wb || (wa == wb && a < b);
        });
        c.in[static_cast<std::size_t>(i)].assign(idx.begin(), idx.begin() + take);
    }
    return c;
}

// Moves a segment of the tour (by positions) to sit after position `after`.
// All positions are in the current order; rebuilds in O(n).
void apply_or_opt(std::vector<int>& order, int seg_begin, int seg_len, int after_pos) {
    const int n = static_cast<int>(order.size());
    std::vector<int> seg;
    seg.reserve(static_cast<std::size_t>(seg_len));
    for (int k = 0; k < seg_len; ++k)
        seg.push_back(order[static_cast<std::size_t>((seg_begin + k) % n)]);

    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n - seg_len));
    const int after_node = order[static_cast<std::size_t>(after_pos)];
    std::vector<bool> in_seg(static_cast<std::size_t>(n), false);
    for (int v : seg) in_seg[static_cast<std::size_t>(v)] = true;
    for (int i = 0; i < n; ++i) {
        const int v = order[static_cast<std::size_t>(i)];
        if (!in_seg[static_cast<std::size_t>(v)]) rest.push_back(v);
    }
    std::vector<int> result;
    result.reserve(static_cast<std::size_t>(n));
    for (int v : rest) {
        result.push_back(v);
        if (v == after_node) result.insert(result.end(), seg.begin(), seg.end());
    }
    order = std::move(result);
}

// Orientation-preserving 3-opt: cut after positions pa, pb, pc (pa<pb<pc) and
// reconnect a->b+1, c->a+1, b->c+1 (block exchange).
void apply_3opt(std::vector<int>& order, int pa, int pb, int pc) {
    std::vector<int> result;
    result.reserve(order.size());
    result.insert(result.end(), order.begin(), order.begin() + pa + 1);
    result.insert(result.end(), order.begin() + pb + 1, order.begin() + pc + 1);
    result.insert(result.end(), order.begin() + pa + 1, order.begin() + pb + 1);
    result.insert(result.end(), order.begin() + pc + 1, order.end());
    order = std::move(result);
}

double improve(const AtspInstance& inst, std::vector<int>& order, const Candidates& cand,
               Clock::time_point deadline) {
    const int n = inst.n;
    std::vector<int> pos(static_cast<std::size_t>(n));
    auto rebuild = [&] {
        for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    };
    rebuild();

    std::vector<bool> dont_look(static_cast<std::size_t>(n), false);
    std::vector<int> queue(static_cast<std::size_t>(n));
    std::iota(queue.begin(), queue.end(), 0);
    std::size_t qhead = 0;
    auto push = [&](int v) {
        if (dont_look[static_cast<std::size_t>(v)]) {
            dont_look[static_cast<std::size_t>(v)] = false;
            queue.push_back(v);
        }
    };

    auto w = [&](int i, int j) { return inst.at(i, j); };
    auto node_at = [&](int p) { return order[static_cast<std::size_t>((p % n + n) % n)]; };

    int counter = 0;
    while (qhead < queue.size()) {
        if (((++counter) & 0x3f) == 0 && Clock::now() > deadline) break;
        const int a = queue[qhead++];
        if (dont_look[static_cast<std::size_t>(a)]) continue;
        dont_look[static_cast<std::size_t>(a)] = true;

        bool moved = false;

        // Or-opt: relocate the segment starting at `a` (length 1..3).
        const int pa = pos[static_cast<std::size_t>(a)];
        for (int len = 1; len <= 3 && len < n - 1 && !moved; ++len) {
            const int seg_first = a;
            const int seg_last = node_at(pa + len - 1);
            const int prev = node_at(pa - 1);
            const int next = node_at(pa + len);
            if (prev == seg_last) break;  // wrapped onto itself
            const double removal = w(prev, seg_first) + w(seg_last, next) - w(prev, next);
            for (int c : cand.in[static_cast<std::size_t>(seg_first)]) {
                // c must lie outside the segment (and not be `prev`).
                const int pc = pos[static_cast<std::size_t>(c)];
                const int rel = ((pc - pa) % n + n) % n;
                if (rel < len || c == prev) continue;
                const int d = node_at(pc + 1);
                if (d == seg_first) continue;
                const double addition = w(c, seg_first) + w(seg_last, d) - w(c, d);
                if (addition < removal - 1e-9) {
                    apply_or_opt(order, pa, len, pc);
                    rebuild();
                    push(prev);
                    push(next);
                    push(c);
                    push(d);
                    push(seg_first);
                    push(seg_last);
                    moved = true;
                    break;
                }
            }
        }
        if (moved) continue;

        // 3-opt block exchange guided by candidates of a and of b.
        const int pa2 = pos[static_cast<std::size_t>(a)];
        const int sa = node_at(pa2 + 1);
        for (int b1 : cand.out[static_cast<std::size_t>(a)]) {
            if (moved) break;
            if (b1 == sa) continue;
            const int pb = ((pos[static_cast<std::size_t>(b1)] - 1) % n + n) % n;  // b = pred(b1)
            const int b = node_at(pb);
            if (b == a) continue;
            const int relb = ((pb - pa2) % n + n) % n;
            if (relb == 0) continue;
            for (int c1 : cand.out[static_cast<std::size_t>(b)]) {
                const int pc = ((pos[static_cast<std::size_t>(c1)] - 1) % n + n) % n;
                const int c = node_at(pc);
                if (c == a || c == b) continue;
                const int relc = ((pc - pa2) % n + n) % n;
                if (relc <= relb) continue;  // need order a < b < c along the tour
                const int sb = node_at(pb + 1);
                const int sc = node_at(pc + 1);
                const double delta = w(a, sb) + w(c, sa) + w(b, sc) - w(a, sa) - w(b, sb) -
                                     w(c, sc);
                if (delta < -1e-9) {
                    // Rotate so `a` is at position 0 to get pa<pb<pc in array form.
                    std::rotate(order.begin(), order.begin() + pa2, order.end());
                    rebuild();
                    apply_3opt(order, 0, ((pb - pa2) % n + n) % n, ((pc - pa2) % n + n) % n);
                    rebuild();
                    push(a);
                    push(b);
                    push(c);
                    push(sa);
                    push(sb);
                    push(sc);
                    moved = true;
                    break;
                }
            }
        }
    }
    return atsp_tour_cost(inst, order);
}

}  // namespace

double atsp_tour_cost(const AtspInstance& inst, const std::vector<int>& order) {
    double cost = 0.0;
    const int n = static_cast<int>(order.size());
    for (int i = 0; i < n; ++i)
        cost += inst.at(order[static_cast<std::size_t>(i)],
                        order[static_cast<std::size_t>((i + 1) % n)]);
    return cost;
}

AtspTour solve_atsp(const AtspInstance& inst, std::uint64_t seed, double time_budget_s,
                    int starts) {
    const int n = inst.n;
    AtspTour best;
    if (n < 3) {
        best.order.resize(static_cast<std::size_t>(std::max(n, 0)));
        std::iota(best.order.begin(), best.order.end(), 0);
        best.cost = n > 0 ? atsp_tour_cost(inst, best.order) : 0.0;
        return best;
    }

    const Candidates cand = build_candidates(inst, std::min(16, n - 1));
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(time_budget_s));

    Xoshiro256 rng(seed);
    std::vector<int> start_nodes(static_cast<std::size_t>(starts));
    for (auto& sn : start_nodes) sn = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));

    struct StartResult {
        std::vector<int> order;
        double cost = std::numeric_limits<double>::infinity();
    };
    std::vector<StartResult> results(static_cast<std::size_t>(starts));

    parallel_for(static_cast<std::size_t>(starts), [&](std::size_t k) {
        std::vector<int> order = nearest_neighbor(inst, start_nodes[k]);
        const double cost = improve(inst, order, cand, deadline);
        results[k] = {std::move(order), cost};
    });

    std::size_t best_idx = 0;
    for (std::size_t k = 1; k < results.size(); ++k)
        if (results[k].cost < results[best_idx].cost) best_idx = k;
    best.order = std::move(results[best_idx].order);
    best.cost = results[best_idx].cost;
    return best;
}

AtspTour brute_force_atsp(const AtspInstance& inst) {
    const int n = inst.n;
    if (n > 12) throw parameter_error("brute_force_atsp: refuses instances larger than 12 nodes");
    AtspTour best;
    if (n < 3) {
        best.order.resize(static_cast<std::size_t>(std::max(n, 0)));
        std::iota(best.order.begin(), best.order.end(), 0);
        best.cost = n > 0 ? atsp_tour_cost(inst, best.order) : 0.0;
        return best;
    }

    std::vector<int> current{0};
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    used[0] = true;
    best.cost = std::numeric_limits<double>::infinity();

    std::function<void(double)> dfs = [&](double cost_so_far) {
        if (cost_so_far >= best.cost) return;
        if (static_cast<int>(current.size()) == n) {
            const double total = cost_so_far + inst.at(current.back(), 0);
            if (total < best.cost) {
                best.cost = total;
                best.order = current;
            }
            return;
        }
        const int last = current.back();
        for (int j = 1; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            current.push_back(j);
            dfs(cost_so_far + inst.at(last, j));
            current.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    dfs(0.0);
    return best;
}

}  // namespace dtspn
