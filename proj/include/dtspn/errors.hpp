#pragma once

#include <stdexcept>
#include <string>

namespace dtspn {

struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct infeasible_roadmap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_tour_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct coverage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct planning_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dtspn
