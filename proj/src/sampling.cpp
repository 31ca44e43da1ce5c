#include "dtspn/sampling.hpp"

#include <cmath>

#include "dtspn/errors.hpp"

namespace dtspn {

double halton(int index, int base) {
    if (index < 1) throw parameter_error("halton: index must be >= 1");
    if (base < 2) throw parameter_error("halton: base must be >= 2");
    double f = 1.0;
    double r = 0.0;
    int i = index;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

std::vector<StateSample> sample_states(const std::vector<Task>& tasks, int m,
                                       const VehicleParams& p) {
    if (m < 1) throw parameter_error("sample_states: m must be >= 1");
    p.validate();

    std::vector<StateSample> samples;
    samples.reserve(tasks.size() * static_cast<std::size_t>(m));

    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& task = tasks[i];
        if (!(task.radius > 0.0)) throw parameter_error("sample_states: task radius must be > 0");
        for (int j = 0; j < m; ++j) {
            const int idx = 1 + static_cast<int>(i) * m + j;
            const double h2 = halton(idx, 2);
            const double h3 = halton(idx, 3);
            const double h5 = halton(idx, 5);

            const double phi = 2.0 * pi * h2;           // boundary angle
            const double inward = phi + pi;             // inward normal direction
            StateSample s;
            s.id = static_cast<int>(samples.size());
            s.task_id = task.id;
            s.state.x = task.center.x + task.radius * std::cos(phi);
            s.state.y = task.center.y + task.radius * std::sin(phi);
            s.state.theta = wrap_angle(inward + (h3 - 0.5) * (pi - 2.0 * kEnteringMargin));
            s.state.v = p.v_min + h5 * (p.v_max - p.v_min);
            samples.push_back(s);
        }
    }
    return samples;
}

}  // namespace dtspn
