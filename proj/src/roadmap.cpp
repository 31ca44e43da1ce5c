#include "dtspn/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dtspn/dubins.hpp"
#include "dtspn/errors.hpp"

namespace dtspn {

int Roadmap::find_edge(int from_id, int to_id) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(from_id, to_id),
                               [](const RoadmapEdge& e, const std::pair<int, int>& key) {
                                   return std::make_pair(e.from_id, e.to_id) < key;
                               });
    if (it != edges.end() && it->from_id == from_id && it->to_id == to_id)
        return static_cast<int>(it - edges.begin());
    return -1;
}

bool prune_test(const StateSample& a, const StateSample& b, const VehicleParams& p,
                double factor) {
    const double dist = distance(a.state.position(), b.state.position());
    if (dist < 1e-12) return false;  // ratio undefined; keep
    const double r_min = p.v_min * p.v_min / p.c2;
    const Pose q0{a.state.x, a.state.y, a.state.theta};
    const Pose q1{b.state.x, b.state.y, b.state.theta};
    const double len = shortest_dubins(q0, q1, r_min).length();
    return len > factor * dist;
}

Roadmap build_roadmap(const std::vector<StateSample>& samples, const VehicleParams& p,
                      const RoadmapConfig& cfg) {
    p.validate();
    cfg.trajopt.validate();

    int num_tasks = 0;
    for (const auto& s : samples) num_tasks = std::max(num_tasks, s.task_id + 1);
    if (num_tasks < 2) throw infeasible_roadmap_error("build_roadmap: need at least 2 tasks");

    // Candidate ordered pairs across distinct tasks, in (from, to) order.
    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(samples.size() * samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j)
            if (i != j && samples[i].task_id != samples[j].task_id)
                candidates.emplace_back(static_cast<int>(i), static_cast<int>(j));

    Roadmap rm;
    rm.samples = samples;
    rm.mode = cfg.mode;
    rm.diagnostics.candidate_pairs = candidates.size();

    struct Slot {
        bool pruned = false;
        bool solved = false;
        Trajectory traj;
    };
    std::vector<Slot> slots(candidates.size());

    parallel_for(
        candidates.size(),
        [&](std::size_t k) {
            const auto [i, j] = candidates[k];
            const StateSample& a = samples[static_cast<std::size_t>(i)];
            const StateSample& b = samples[static_cast<std::size_t>(j)];
            if (cfg.mode == RoadmapMode::Reduced && prune_test(a, b, p, cfg.prune_factor)) {
                slots[k].pruned = true;
                return;
            }
            if (auto traj = min_time_path(a.state, b.state, p, cfg.trajopt)) {
                slots[k].solved = true;
                slots[k].traj = std::move(*traj);
            }
        },
        cfg.threads);

    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (slots[k].pruned) {
            ++rm.diagnostics.pruned_pairs;
        } else if (slots[k].solved) {
            rm.edges.push_back({candidates[k].first, candidates[k].second, slots[k].traj.cost,
                                std::move(slots[k].traj)});
            ++rm.diagnostics.solved_edges;
        } else {
            ++rm.diagnostics.failed_solves;
        }
    }

    std::vector<int> incident(static_cast<std::size_t>(num_tasks), 0);
    for (const auto& e : rm.edges) {
        ++incident[static_cast<std::size_t>(samples[static_cast<std::size_t>(e.from_id)].task_id)];
        ++incident[static_cast<std::size_t>(samples[static_cast<std::size_t>(e.to_id)].task_id)];
    }
    std::vector<bool> has_task(static_cast<std::size_t>(num_tasks), false);
    for (const auto& s : samples) has_task[static_cast<std::size_t>(s.task_id)] = true;
    for (int t = 0; t < num_tasks; ++t) {
        if (has_task[static_cast<std::size_t>(t)] && incident[static_cast<std::size_t>(t)] == 0)
            throw infeasible_roadmap_error("build_roadmap: task " + std::to_string(t) +
                                           " has no incident edges");
    }
    return rm;
}

}  // namespace dtspn
