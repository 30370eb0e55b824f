#include "stochreach/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace stochreach {

using nlohmann::json;

bool Rect::contains(const Vector& p) const {
    for (int a = 0; a < p.size(); ++a)
        if (p[a] < lower[a] || p[a] > upper[a]) return false;
    return true;
}

bool Rect::intersects(const Rect& other) const {
    for (int a = 0; a < lower.size(); ++a)
        if (upper[a] < other.lower[a] || other.upper[a] < lower[a]) return false;
    return true;
}

double RobotScenario::noise_std() const {
    return noise_param_is_variance ? std::sqrt(noise_param) : noise_param;
}

void RobotScenario::validate() const {
    if (step_length <= 0.0) throw std::invalid_argument("scenario: step length must be positive");
    if (noise_param < 0.0) throw std::invalid_argument("scenario: noise parameter must be >= 0");
    if (action_count < 1) throw std::invalid_argument("scenario: need at least one action");
    if (horizon < 0) throw std::invalid_argument("scenario: negative horizon");
    if (samples_per_pair < 1) throw std::invalid_argument("scenario: need at least one sample");
    if (grid_cells.size() != 2) throw std::invalid_argument("scenario: grid must be 2-D");
    for (int d : grid_cells)
        if (d < 1) throw std::invalid_argument("scenario: grid cells must be >= 1");
    if (!room.contains(target.lower) || !room.contains(target.upper))
        throw std::invalid_argument("scenario: target must lie inside the room");
    for (const auto& wall : walls)
        if (wall.intersects(target))
            throw std::invalid_argument("scenario: target overlaps a wall");
}

RobotScenario RobotScenario::defaults() {
    RobotScenario scn;
    const auto rect = [](double x0, double y0, double x1, double y1) {
        return Rect{(Vector(2) << x0, y0).finished(), (Vector(2) << x1, y1).finished()};
    };
    // Approximate map: two lower wall segments with a gap, one upper wall
    // reaching in from the left below the goal corner.
    scn.walls = {rect(5.0, 10.0, 20.0, 12.0), rect(30.0, 10.0, 45.0, 12.0),
                 rect(0.0, 34.0, 30.0, 36.0)};
    scn.target = rect(0.0, 40.0, 10.0, 50.0);
    return scn;
}

namespace {

Vector vec_from_json(const json& j) {
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
    return v;
}

json vec_to_json(const Vector& v) {
    json j = json::array();
    for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

Rect rect_from_json(const json& j) {
    return Rect{vec_from_json(j.at("lower")), vec_from_json(j.at("upper"))};
}

json rect_to_json(const Rect& r) {
    return json{{"lower", vec_to_json(r.lower)}, {"upper", vec_to_json(r.upper)}};
}

}  // namespace

RobotScenario scenario_from_json_text(const std::string& text) {
    const json j = json::parse(text);
    RobotScenario scn = RobotScenario::defaults();
    if (j.contains("step_length")) scn.step_length = j.at("step_length").get<double>();
    if (j.contains("noise")) {
        const json& n = j.at("noise");
        scn.noise_param = n.at("value").get<double>();
        const std::string meaning = n.value("meaning", std::string("std"));
        if (meaning == "std") scn.noise_param_is_variance = false;
        else if (meaning == "variance") scn.noise_param_is_variance = true;
        else throw std::invalid_argument("scenario: noise meaning must be 'std' or 'variance'");
    }
    if (j.contains("room")) scn.room = rect_from_json(j.at("room"));
    if (j.contains("walls")) {
        scn.walls.clear();
        for (const auto& w : j.at("walls")) scn.walls.push_back(rect_from_json(w));
    }
    if (j.contains("target")) scn.target = rect_from_json(j.at("target"));
    if (j.contains("grid")) scn.grid_cells = j.at("grid").get<std::vector<int>>();
    if (j.contains("actions")) scn.action_count = j.at("actions").get<int>();
    if (j.contains("horizon")) scn.horizon = j.at("horizon").get<int>();
    if (j.contains("samples_per_pair")) scn.samples_per_pair = j.at("samples_per_pair").get<int>();
    if (j.contains("seed")) scn.seed = j.at("seed").get<std::uint64_t>();
    scn.validate();
    return scn;
}

std::string scenario_to_json_text(const RobotScenario& scn) {
    json walls = json::array();
    for (const auto& w : scn.walls) walls.push_back(rect_to_json(w));
    const json j{
        {"step_length", scn.step_length},
        {"noise",
         {{"value", scn.noise_param},
          {"meaning", scn.noise_param_is_variance ? "variance" : "std"}}},
        {"room", rect_to_json(scn.room)},
        {"walls", walls},
        {"target", rect_to_json(scn.target)},
        {"grid", scn.grid_cells},
        {"actions", scn.action_count},
        {"horizon", scn.horizon},
        {"samples_per_pair", scn.samples_per_pair},
        {"seed", scn.seed},
    };
    return j.dump(2) + "\n";
}

RobotScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scenario_from_json_text(text);
}

Vector robot_step(const Vector& x, double heading, double noise, double step_length) {
    const double theta = heading + noise;
    Vector next(2);
    next[0] = x[0] + step_length * std::sin(theta);
    next[1] = x[1] + step_length * std::cos(theta);
    return next;
}

Simulator robot_simulator(const RobotScenario& scn) {
    const double sd = scn.noise_std();
    const double step = scn.step_length;
    return [sd, step](const Vector& x, const Vector& u, CounterRng& noise) {
        return robot_step(x, u[0], sd * noise.normal(), step);
    };
}

StateGrid robot_grid(const RobotScenario& scn) {
    return StateGrid(scn.grid_cells, scn.room.lower, scn.room.upper);
}

bool in_safe_region(const RobotScenario& scn, const Vector& p) {
    if (!scn.room.contains(p)) return false;
    for (const auto& wall : scn.walls)
        if (wall.contains(p)) return false;
    return true;
}

bool in_target_region(const RobotScenario& scn, const Vector& p) {
    return scn.target.contains(p) && in_safe_region(scn, p);
}

RobotModel build_robot_model(const RobotScenario& scn, int samples_per_pair,
                             std::uint64_t seed, int workers) {
    scn.validate();
    RobotModel out;
    out.grid = robot_grid(scn);
    out.actions = heading_actions(scn.action_count);
    out.model = estimate_kernel(robot_simulator(scn), out.grid, out.actions, samples_per_pair,
                                seed, workers);
    out.safe = mask_from_predicate(
        out.grid, [&](const Vector& p) { return in_safe_region(scn, p); }, "safe");
    out.target = mask_from_predicate(
        out.grid, [&](const Vector& p) { return in_target_region(scn, p); }, "target");
    return out;
}

}  // namespace stochreach
