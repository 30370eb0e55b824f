#pragma once

#include "stochreach/model.hpp"

#include <string>

namespace stochreach {

/// Closed axis-aligned box.
struct Rect {
    Vector lower, upper;

    bool contains(const Vector& p) const;
    bool intersects(const Rect& other) const;
};

/// Planar robot that rotates in place and then moves a fixed distance; the
/// realized heading is the commanded one plus Gaussian noise. The room is a
/// box with interior rectangular walls; the goal set sits in a corner.
struct RobotScenario {
    double step_length = 3.0;
    /// Heading noise parameter in radians; interpreted as the standard
    /// deviation unless noise_param_is_variance is set.
    double noise_param = 0.62831853071795864769;  // pi/5
    bool noise_param_is_variance = false;
    Rect room{Vector::Zero(2), (Vector(2) << 50.0, 50.0).finished()};
    std::vector<Rect> walls;
    Rect target;
    std::vector<int> grid_cells{50, 50};
    int action_count = 18;
    int horizon = 100;
    int samples_per_pair = 1000;
    std::uint64_t seed = 1;

    double noise_std() const;
    void validate() const;

    /// Room, walls, and target matching the shipped default map: three
    /// interior walls and a goal box in the top-left corner.
    static RobotScenario defaults();
};

RobotScenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const RobotScenario& scn);
RobotScenario load_scenario(const std::string& path);

/// One motion step: x + L*(sin(theta), cos(theta)) with theta = u + w.
Vector robot_step(const Vector& x, double heading, double noise, double step_length = 3.0);

/// Simulator closure drawing the heading noise from the stream.
Simulator robot_simulator(const RobotScenario& scn);

StateGrid robot_grid(const RobotScenario& scn);
bool in_safe_region(const RobotScenario& scn, const Vector& p);
bool in_target_region(const RobotScenario& scn, const Vector& p);

struct RobotModel {
    StateGrid grid;
    ActionSet actions;
    TransitionModel model;
    RegionMask safe;
    RegionMask target;
};

/// Grids the room, estimates the kernel by simulation, and derives the safe
/// and target cell masks. Wall cells and the out-of-domain cell are unsafe.
RobotModel build_robot_model(const RobotScenario& scn, int samples_per_pair,
                             std::uint64_t seed, int workers = 1);

}  // namespace stochreach
