#include "dtspn/gtsp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "dtspn/errors.hpp"

namespace dtspn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

AtspInstance AtspInstance::from_matrix(std::vector<std::vector<double>> m) {
    AtspInstance inst;
    inst.n = static_cast<int>(m.size());
    inst.w.resize(static_cast<std::size_t>(inst.n) * inst.n);
    inst.nodes.resize(static_cast<std::size_t>(inst.n));
    double max_w = 0.0;
    for (int i = 0; i < inst.n; ++i) {
        if (static_cast<int>(m[i].size()) != inst.n)
            throw parameter_error("AtspInstance::from_matrix: matrix must be square");
        for (int j = 0; j < inst.n; ++j) {
            inst.at(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (std::isfinite(m[i][j])) max_w = std::max(max_w, m[i][j]);
        }
        inst.nodes[static_cast<std::size_t>(i)] = {NodeKind::Sample, i, i, 0};
    }
    inst.num_groups = inst.n;
    inst.sentinel = 10.0 * std::max(max_w, 1.0) * inst.n;
    for (int i = 0; i < inst.n; ++i) inst.at(i, i) = inst.sentinel;
    return inst;
}

GtspGraph build_gtsp(const Roadmap& roadmap) {
    GtspGraph g;
    const int num_samples = static_cast<int>(roadmap.samples.size());
    g.groups.resize(static_cast<std::size_t>(num_samples));
    int max_task = -1;
    for (int i = 0; i < num_samples; ++i) {
        g.groups[static_cast<std::size_t>(i)] = roadmap.samples[static_cast<std::size_t>(i)].task_id;
        max_task = std::max(max_task, roadmap.samples[static_cast<std::size_t>(i)].task_id);
    }
    g.num_groups = max_task + 1;

    std::vector<int> group_size(static_cast<std::size_t>(g.num_groups), 0);
    for (int gi : g.groups) ++group_size[static_cast<std::size_t>(gi)];
    for (int t = 0; t < g.num_groups; ++t)
        if (group_size[static_cast<std::size_t>(t)] == 0)
            throw infeasible_roadmap_error("build_gtsp: group " + std::to_string(t) +
                                           " has no samples");

    g.w.assign(static_cast<std::size_t>(num_samples),
               std::vector<double>(static_cast<std::size_t>(num_samples), kInf));
    for (const auto& e : roadmap.edges)
        g.w[static_cast<std::size_t>(e.from_id)][static_cast<std::size_t>(e.to_id)] = e.cost;

    std::vector<bool> has_edge(static_cast<std::size_t>(g.num_groups), false);
    for (const auto& e : roadmap.edges) {
        has_edge[static_cast<std::size_t>(g.groups[static_cast<std::size_t>(e.from_id)])] = true;
        has_edge[static_cast<std::size_t>(g.groups[static_cast<std::size_t>(e.to_id)])] = true;
    }
    for (int t = 0; t < g.num_groups; ++t)
        if (!has_edge[static_cast<std::size_t>(t)])
            throw infeasible_roadmap_error("build_gtsp: group " + std::to_string(t) +
                                           " has no incident edges");
    return g;
}

AtspInstance noon_bean_with_nin(const GtspGraph& gtsp, const NinMap& nin, double m_override) {
    const int num_samples = gtsp.size();
    const int num_groups = gtsp.num_groups;

    // Node table: samples first, then intersection nodes in creation order.
    std::vector<AtspNodeMeta> nodes;
    nodes.reserve(static_cast<std::size_t>(num_samples));
    for (int i = 0; i < num_samples; ++i)
        nodes.push_back({NodeKind::Sample, i, gtsp.groups[static_cast<std::size_t>(i)], -1});

    std::size_t total_nin = 0;
    for (const auto& [sample, list] : nin) {
        if (sample < 0 || sample >= num_samples)
            throw parameter_error("noon_bean_with_nin: NIN sample id out of range");
        for (int k : list) {
            if (k == gtsp.groups[static_cast<std::size_t>(sample)])
                throw parameter_error("noon_bean_with_nin: NIN list contains own group");
            if (k < 0 || k >= num_groups)
                throw parameter_error("noon_bean_with_nin: NIN group out of range");
        }
        total_nin += list.size();
    }

    const int n = num_samples + static_cast<int>(total_nin);

    enum class EdgeKind : unsigned char { Absent, Weighted, Chain, Cycle };
    std::vector<double> base(static_cast<std::size_t>(n) * n, kInf);
    std::vector<EdgeKind> kind(static_cast<std::size_t>(n) * n, EdgeKind::Absent);
    auto set_edge = [&](int u, int v, double w, EdgeKind k) {
        base[static_cast<std::size_t>(u) * n + v] = w;
        kind[static_cast<std::size_t>(u) * n + v] = k;
    };

    for (int i = 0; i < num_samples; ++i)
        for (int j = 0; j < num_samples; ++j)
            if (std::isfinite(gtsp.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                set_edge(i, j, gtsp.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                         EdgeKind::Weighted);

    // Intersection-node insertion, samples in ascending id order.
    int warn_dead_ends = 0;
    for (const auto& [sample, list] : nin) {
        if (list.empty()) continue;
        const int p = static_cast<int>(list.size());
        std::vector<int> inter(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) {
            inter[static_cast<std::size_t>(j)] = static_cast<int>(nodes.size());
            nodes.push_back({NodeKind::Intersection, sample, list[static_cast<std::size_t>(j)], -1});
        }
        const int last = inter[static_cast<std::size_t>(p - 1)];

        // Copy the sample's leaving edges onto the last chain node, skipping
        // edges into any of the chained groups; they are covered in passing.
        int copied = 0;
        for (int t = 0; t < num_samples; ++t) {
            const double w = gtsp.w[static_cast<std::size_t>(sample)][static_cast<std::size_t>(t)];
            if (!std::isfinite(w)) continue;
            const int tg = gtsp.groups[static_cast<std::size_t>(t)];
            if (std::find(list.begin(), list.end(), tg) != list.end()) continue;
            set_edge(last, t, w, EdgeKind::Weighted);
            ++copied;
        }
        if (copied == 0) ++warn_dead_ends;

        for (int t = 0; t < num_samples; ++t) set_edge(sample, t, kInf, EdgeKind::Absent);
        set_edge(sample, inter[0], 0.0, EdgeKind::Chain);
        for (int j = 0; j + 1 < p; ++j)
            set_edge(inter[static_cast<std::size_t>(j)], inter[static_cast<std::size_t>(j + 1)],
                     0.0, EdgeKind::Chain);
    }
    (void)warn_dead_ends;  // surfaced via planner diagnostics

    // Per-group zero-weight cycles in node insertion order.
    std::vector<std::vector<int>> members(static_cast<std::size_t>(num_groups));
    for (int v = 0; v < n; ++v)
        members[static_cast<std::size_t>(nodes[static_cast<std::size_t>(v)].group)].push_back(v);
    std::vector<int> pred(static_cast<std::size_t>(n));
    for (int gidx = 0; gidx < num_groups; ++gidx) {
        const auto& cyc = members[static_cast<std::size_t>(gidx)];
        const int q = static_cast<int>(cyc.size());
        for (int i = 0; i < q; ++i) {
            const int u = cyc[static_cast<std::size_t>(i)];
            nodes[static_cast<std::size_t>(u)].cycle_pos = i;
            pred[static_cast<std::size_t>(u)] = cyc[static_cast<std::size_t>((i + q - 1) % q)];
            if (q >= 2)
                set_edge(u, cyc[static_cast<std::size_t>((i + 1) % q)], 0.0, EdgeKind::Cycle);
        }
    }

    // M larger than the sum of the num_groups largest finite pre-shift weights.
    double big_m = m_override;
    if (!(big_m > 0.0)) {
        std::vector<double> finite;
        finite.reserve(static_cast<std::size_t>(n) * 4);
        for (std::size_t e = 0; e < base.size(); ++e)
            if (kind[e] != EdgeKind::Absent) finite.push_back(base[e]);
        std::partial_sort(finite.begin(),
                          finite.begin() + std::min<std::size_t>(finite.size(),
                                                                 static_cast<std::size_t>(num_groups)),
                          finite.end(), std::greater<double>());
        double sum = 0.0;
        for (int i = 0; i < num_groups && i < static_cast<int>(finite.size()); ++i)
            sum += finite[static_cast<std::size_t>(i)];
        big_m = sum + 1.0;
    }

    AtspInstance inst;
    inst.n = n;
    inst.nodes = std::move(nodes);
    inst.num_groups = num_groups;
    inst.big_m = big_m;
    inst.sentinel = 10.0 * big_m;
    inst.w.assign(static_cast<std::size_t>(n) * n, inst.sentinel);

    // Zero cycles stay in place; every inter-group edge (weighted or chain)
    // gains M and its tail moves to the cycle predecessor.
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            const std::size_t e = static_cast<std::size_t>(u) * n + v;
            switch (kind[e]) {
                case EdgeKind::Absent: break;
                case EdgeKind::Cycle: inst.at(u, v) = 0.0; break;
                case EdgeKind::Weighted:
                case EdgeKind::Chain:
                    inst.at(pred[static_cast<std::size_t>(u)], v) = base[e] + big_m;
                    break;
            }
        }
    }
    for (int i = 0; i < n; ++i) inst.at(i, i) = inst.sentinel;
    return inst;
}

std::vector<VisitEntry> interpret_atsp_tour(const std::vector<int>& tour,
                                            const AtspInstance& inst) {
    const int n = inst.n;
    if (static_cast<int>(tour.size()) != n)
        throw invalid_tour_error("interpret_atsp_tour: tour size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : tour) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw invalid_tour_error("interpret_atsp_tour: not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }

    auto group_of = [&](int pos) {
        return inst.nodes[static_cast<std::size_t>(tour[static_cast<std::size_t>(pos)])].group;
    };
    int boundaries = 0;
    for (int i = 0; i < n; ++i)
        if (group_of(i) != group_of((i + n - 1) % n)) ++boundaries;
    if (boundaries != inst.num_groups)
        throw invalid_tour_error(
            "interpret_atsp_tour: groups are not contiguous in the tour (got " +
            std::to_string(boundaries) + " runs for " + std::to_string(inst.num_groups) +
            " groups)");

    int start = 0;
    for (int i = 0; i < n; ++i) {
        if (group_of(i) != group_of((i + n - 1) % n)) {
            start = i;
            break;
        }
    }

    std::vector<VisitEntry> visits;
    visits.reserve(static_cast<std::size_t>(inst.num_groups));
    int prev_group = -1;
    for (int k = 0; k < n; ++k) {
        const int v = tour[static_cast<std::size_t>((start + k) % n)];
        const AtspNodeMeta& meta = inst.nodes[static_cast<std::size_t>(v)];
        if (meta.group == prev_group) continue;
        prev_group = meta.group;
        VisitEntry entry;
        entry.group = meta.group;
        if (meta.kind == NodeKind::Sample) {
            entry.sample_id = meta.origin_sample;
        } else {
            entry.concomitant = true;
        }
        visits.push_back(entry);
    }
    return visits;
}

std::string to_tsplib(const AtspInstance& inst, const std::string& name) {
    std::ostringstream out;
    out << "NAME: " << name << "\n";
    out << "TYPE: ATSP\n";
    out << "COMMENT: transformed roadmap instance\n";
    out << "DIMENSION: " << inst.n << "\n";
    out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
    out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
    out << "EDGE_WEIGHT_SECTION\n";
    for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
            out << static_cast<long long>(std::llround(inst.at(i, j) * 1000.0));
            out << (j + 1 == inst.n ? '\n' : ' ');
        }
    }
    out << "EOF\n";
    return out.str();
}

std::vector<int> parse_tsplib_tour(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool in_section = false;
    std::vector<int> tour;
    while (std::getline(in, line)) {
        if (!in_section) {
            if (line.find("TOUR_SECTION") != std::string::npos) in_section = true;
            continue;
        }
        std::istringstream ls(line);
        long long v;
        while (ls >> v) {
            if (v == -1) return tour;
            if (v < 1) throw parameter_error("parse_tsplib_tour: node ids are 1-based");
            tour.push_back(static_cast<int>(v - 1));
        }
    }
    if (!in_section) throw parameter_error("parse_tsplib_tour: no TOUR_SECTION");
    return tour;
}

}  // namespace dtspn
