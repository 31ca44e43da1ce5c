#pragma once

#include <string>
#include <vector>

#include "dtspn/intersect.hpp"
#include "dtspn/roadmap.hpp"

namespace dtspn {

/// GTSP over roadmap samples: one node per sample, groups = tasks, directed
/// edges weighted by flight time. Absent edges are +infinity.
struct GtspGraph {
    int num_groups = 0;
    std::vector<int> groups;                // group id per node
    std::vector<std::vector<double>> w;     // dense weights, infinity = absent

    int size() const { return static_cast<int>(groups.size()); }
};

enum class NodeKind { Sample, Intersection };

struct AtspNodeMeta {
    NodeKind kind = NodeKind::Sample;
    int origin_sample = -1;  // sample node the entry derives from
    int group = -1;
    int cycle_pos = -1;      // position in the group's zero-weight cycle
};

struct AtspInstance {
    int n = 0;
    std::vector<double> w;  // row-major n*n, final (post-shift) weights
    std::vector<AtspNodeMeta> nodes;
    int num_groups = 0;
    double big_m = 0.0;
    double sentinel = 0.0;  // absent edges and the diagonal carry this

    double at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; }

    static AtspInstance from_matrix(std::vector<std::vector<double>> m);
};

/// Builds the GTSP graph from a roadmap. Throws infeasible_roadmap_error for
/// an empty group.
GtspGraph build_gtsp(const Roadmap& roadmap);

/// Noon-Bean transformation extended with intersection nodes: every sample
/// with a nonempty NIN list hands its leaving edges to a zero-weight chain of
/// intersection nodes through the listed groups. Then the standard steps:
/// per-group zero cycles, +M on inter-group edges, and tails shifted to each
/// node's cycle predecessor. With m_override > 0 the shift constant M is
/// forced (used when a solver needs a retry with a larger M).
AtspInstance noon_bean_with_nin(const GtspGraph& gtsp, const NinMap& nin,
                                double m_override = 0.0);

struct VisitEntry {
    int group = -1;
    int sample_id = -1;      // -1 when the group is covered concomitantly
    bool concomitant = false;
};

/// First-visited-node interpretation of an ATSP tour. Requires each group's
/// nodes to be consecutive in the cyclic tour; otherwise throws
/// invalid_tour_error.
std::vector<VisitEntry> interpret_atsp_tour(const std::vector<int>& tour,
                                            const AtspInstance& inst);

/// TSPLIB export (TYPE: ATSP, FULL_MATRIX). Weights become round(seconds*1000).
std::string to_tsplib(const AtspInstance& inst, const std::string& name);

/// Parses a TSPLIB tour file (TOUR_SECTION, 1-based indices, -1 terminated).
std::vector<int> parse_tsplib_tour(const std::string& text);

}  // namespace dtspn
