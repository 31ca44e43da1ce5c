#include "dtspn/dubins.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "dtspn/errors.hpp"

namespace dtspn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFeasEps = 1e-12;  // tolerance on trig-argument overshoot
constexpr double kSnapEps = 1e-10;  // arcs this close to 0 or 2*pi collapse to 0

double mod2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r < kSnapEps || kTwoPi - r < kSnapEps) r = 0.0;
    return r;
}

// Normalized segment triple (arc angles in rad, straight length in radius units).
struct WordParams {
    double t, p, q;
    double total() const { return t + p + q; }
};

using MaybeParams = std::optional<WordParams>;

MaybeParams word_lsl(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p_sq = 2.0 + d * d - 2.0 * std::cos(a - b) + 2.0 * d * (sa - sb);
    if (p_sq < -kFeasEps) return std::nullopt;
    const double tmp = std::atan2(cb - ca, d + sa - sb);
    return WordParams{mod2pi(-a + tmp), std::sqrt(std::max(p_sq, 0.0)), mod2pi(b - tmp)};
}

MaybeParams word_rsr(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p_sq = 2.0 + d * d - 2.0 * std::cos(a - b) + 2.0 * d * (sb - sa);
    if (p_sq < -kFeasEps) return std::nullopt;
    const double tmp = std::atan2(ca - cb, d - sa + sb);
    return WordParams{mod2pi(a - tmp), std::sqrt(std::max(p_sq, 0.0)), mod2pi(-b + tmp)};
}

MaybeParams word_lsr(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p_sq = -2.0 + d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sa + sb);
    if (p_sq < -kFeasEps) return std::nullopt;
    const double p = std::sqrt(std::max(p_sq, 0.0));
    const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
    return WordParams{mod2pi(-a + tmp), p, mod2pi(-b + tmp)};
}

MaybeParams word_rsl(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p_sq = d * d - 2.0 + 2.0 * std::cos(a - b) - 2.0 * d * (sa + sb);
    if (p_sq < -kFeasEps) return std::nullopt;
    const double p = std::sqrt(std::max(p_sq, 0.0));
    const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
    return WordParams{mod2pi(a - tmp), p, mod2pi(b - tmp)};
}

MaybeParams word_rlr(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double arg = (6.0 - d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sa - sb)) / 8.0;
    if (std::fabs(arg) > 1.0 + kFeasEps) return std::nullopt;
    arg = std::clamp(arg, -1.0, 1.0);
    const double p = mod2pi(kTwoPi - std::acos(arg));
    const double t = mod2pi(a - std::atan2(ca - cb, d - sa + sb) + 0.5 * p);
    return WordParams{t, p, mod2pi(a - b - t + p)};
}

MaybeParams word_lrl(double d, double a, double b) {
    const double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double arg = (6.0 - d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sb - sa)) / 8.0;
    if (std::fabs(arg) > 1.0 + kFeasEps) return std::nullopt;
    arg = std::clamp(arg, -1.0, 1.0);
    const double p = mod2pi(kTwoPi - std::acos(arg));
    const double t = mod2pi(-a + std::atan2(cb - ca, d + sa - sb) + 0.5 * p);
    return WordParams{t, p, mod2pi(b - a - t + p)};
}

MaybeParams compute_word(DubinsWord w, double d, double a, double b) {
    switch (w) {
        case DubinsWord::LSL: return word_lsl(d, a, b);
        case DubinsWord::RSR: return word_rsr(d, a, b);
        case DubinsWord::LSR: return word_lsr(d, a, b);
        case DubinsWord::RSL: return word_rsl(d, a, b);
        case DubinsWord::RLR: return word_rlr(d, a, b);
        case DubinsWord::LRL: return word_lrl(d, a, b);
    }
    return std::nullopt;
}

char segment_kind(DubinsWord w, int i) {
    static constexpr const char* kWords[6] = {"LSL", "RSR", "LSR", "RSL", "RLR", "LRL"};
    return kWords[static_cast<int>(w)][i];
}

Pose advance_segment(const Pose& q, char kind, double s, double r) {
    Pose n = q;
    switch (kind) {
        case 'S':
            n.x += s * std::cos(q.theta);
            n.y += s * std::sin(q.theta);
            break;
        case 'L': {
            const double phi = s / r;
            n.x += r * (std::sin(q.theta + phi) - std::sin(q.theta));
            n.y -= r * (std::cos(q.theta + phi) - std::cos(q.theta));
            n.theta = wrap_angle(q.theta + phi);
            break;
        }
        case 'R': {
            const double phi = s / r;
            n.x -= r * (std::sin(q.theta - phi) - std::sin(q.theta));
            n.y += r * (std::cos(q.theta - phi) - std::cos(q.theta));
            n.theta = wrap_angle(q.theta - phi);
            break;
        }
    }
    return n;
}

Pose path_endpoint(const DubinsPath& path) {
    Pose q = path.q0;
    for (int i = 0; i < 3; ++i)
        q = advance_segment(q, segment_kind(path.word, i), path.segment_lengths[i], path.radius);
    return q;
}

}  // namespace

std::string to_string(DubinsWord w) {
    static constexpr const char* kWords[6] = {"LSL", "RSR", "LSR", "RSL", "RLR", "LRL"};
    return kWords[static_cast<int>(w)];
}

DubinsPath shortest_dubins(const Pose& q0, const Pose& q1, double r) {
    if (!(r > 0.0)) throw parameter_error("shortest_dubins: radius must be positive");

    const double dx = q1.x - q0.x, dy = q1.y - q0.y;
    const double dist = std::hypot(dx, dy);

    DubinsPath best;
    best.q0 = q0;
    best.q1 = q1;
    best.radius = r;

    if (dist < 1e-12 && std::fabs(wrap_angle(q1.theta - q0.theta)) < 1e-12) {
        return best;  // coincident poses: zero-length path
    }

    const double phi = std::atan2(dy, dx);
    const double d = dist / r;
    const double a = wrap_angle_2pi(q0.theta - phi);
    const double b = wrap_angle_2pi(q1.theta - phi);

    double best_len = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int wi = 0; wi < 6; ++wi) {
        const auto w = static_cast<DubinsWord>(wi);
        const auto params = compute_word(w, d, a, b);
        if (!params) continue;

        DubinsPath cand;
        cand.word = w;
        cand.segment_lengths = {params->t * r, params->p * r, params->q * r};
        cand.radius = r;
        cand.q0 = q0;
        cand.q1 = q1;

        // A clamped trig argument can produce a path that no longer closes on
        // q1; such words are treated as infeasible.
        const Pose end = path_endpoint(cand);
        const double pos_err = std::hypot(end.x - q1.x, end.y - q1.y);
        const double ang_err = std::fabs(wrap_angle(end.theta - q1.theta));
        if (pos_err > 1e-6 * std::max(1.0, dist) || ang_err > 1e-6) continue;

        const double len = cand.length();
        if (len < best_len) {
            best_len = len;
            best = cand;
            found = true;
        }
    }
    if (!found) throw planning_error("shortest_dubins: no feasible word (degenerate input)");
    return best;
}

double dubins_length(const DubinsPath& path) { return path.length(); }

Pose dubins_pose_at(const DubinsPath& path, double s) {
    s = std::clamp(s, 0.0, path.length());
    Pose q = path.q0;
    for (int i = 0; i < 3; ++i) {
        const double seg = path.segment_lengths[i];
        const char kind = segment_kind(path.word, i);
        if (s <= seg) return advance_segment(q, kind, s, path.radius);
        q = advance_segment(q, kind, seg, path.radius);
        s -= seg;
    }
    return q;
}

std::vector<std::pair<double, Pose>> sample_dubins(const DubinsPath& path, int k) {
    if (k < 2) throw parameter_error("sample_dubins: need k >= 2");
    std::vector<std::pair<double, Pose>> out;
    out.reserve(static_cast<std::size_t>(k));
    const double total = path.length();
    for (int i = 0; i < k; ++i) {
        const double s = total * static_cast<double>(i) / static_cast<double>(k - 1);
        out.emplace_back(s, dubins_pose_at(path, s));
    }
    return out;
}

}  // namespace dtspn
