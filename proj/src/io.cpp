#include "stochreach/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cstring>
#include <fstream>

namespace stochreach {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

void write_index_columns(std::ofstream& out, const StateGrid* grid, int cell) {
    if (!grid) return;
    if (cell < grid->num_cells()) {
        for (int i : grid->multi_index(cell)) out << "," << i;
    } else {
        for (int a = 0; a < grid->axes(); ++a) out << ",-1";  // out-of-domain cell
    }
}

json grid_to_json(const StateGrid& grid) {
    json lower = json::array(), upper = json::array();
    for (int a = 0; a < grid.axes(); ++a) {
        lower.push_back(grid.lower()[a]);
        upper.push_back(grid.upper()[a]);
    }
    return json{{"cells", grid.dims()}, {"lower", lower}, {"upper", upper}};
}

StateGrid grid_from_json(const json& j) {
    const auto cells = j.at("cells").get<std::vector<int>>();
    Vector lower(static_cast<int>(cells.size())), upper(static_cast<int>(cells.size()));
    for (size_t a = 0; a < cells.size(); ++a) {
        lower[static_cast<int>(a)] = j.at("lower")[a].get<double>();
        upper[static_cast<int>(a)] = j.at("upper")[a].get<double>();
    }
    return StateGrid(cells, lower, upper);
}

}  // namespace

void write_value_table_csv(const std::string& path, const ValueTable& table,
                           const StateGrid* grid) {
    auto out = open_out(path);
    out << "stage,cell";
    if (grid)
        for (int a = 0; a < grid->axes(); ++a) out << ",i" << a;
    out << ",value\n";
    for (int k = 0; k <= table.horizon(); ++k)
        for (int x = 0; x < table.n_states(); ++x) {
            out << k << "," << x;
            write_index_columns(out, grid, x);
            out << "," << format_double(table.values(k, x)) << "\n";
        }
}

void write_mask_csv(const std::string& path, const RegionMask& mask, const StateGrid* grid) {
    auto out = open_out(path);
    out << "cell";
    if (grid)
        for (int a = 0; a < grid->axes(); ++a) out << ",i" << a;
    out << ",member\n";
    for (int x = 0; x < mask.size(); ++x) {
        out << x;
        write_index_columns(out, grid, x);
        out << "," << (mask.contains(x) ? 1 : 0) << "\n";
    }
}

void write_policy_csv(const std::string& path, const PolicyTable& policy) {
    auto out = open_out(path);
    out << "stage,cell,action\n";
    for (int k = 0; k < policy.horizon(); ++k)
        for (int x = 0; x < policy.n_states(); ++x)
            out << k << "," << x << "," << policy.action(k, x) << "\n";
}

void write_kernel_csv(const std::string& path, const TransitionModel& model) {
    auto out = open_out(path);
    out << "action,from,to,prob\n";
    for (int a = 0; a < model.n_actions(); ++a)
        for (int x = 0; x < model.n_states(); ++x)
            for (SparseMatrix::InnerIterator it(model.matrix(a), x); it; ++it)
                out << a << "," << x << "," << it.col() << ","
                    << format_double(it.value()) << "\n";
}

TransitionModel read_kernel_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "action,from,to,prob")
        throw std::runtime_error("kernel csv: bad header in " + path);
    struct Entry {
        int action, from, to;
        double prob;
    };
    std::vector<Entry> entries;
    int n_states = 0, n_actions = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Entry e;
        char* end = nullptr;
        e.action = static_cast<int>(std::strtol(line.c_str(), &end, 10));
        e.from = static_cast<int>(std::strtol(end + 1, &end, 10));
        e.to = static_cast<int>(std::strtol(end + 1, &end, 10));
        e.prob = std::strtod(end + 1, nullptr);
        entries.push_back(e);
        n_states = std::max({n_states, e.from + 1, e.to + 1});
        n_actions = std::max(n_actions, e.action + 1);
    }
    std::vector<std::vector<Eigen::Triplet<double>>> trips(static_cast<size_t>(n_actions));
    for (const auto& e : entries)
        trips[static_cast<size_t>(e.action)].emplace_back(e.from, e.to, e.prob);
    std::vector<SparseMatrix> kernel;
    for (int a = 0; a < n_actions; ++a) {
        SparseMatrix m(n_states, n_states);
        m.setFromTriplets(trips[static_cast<size_t>(a)].begin(),
                          trips[static_cast<size_t>(a)].end());
        kernel.push_back(std::move(m));
    }
    return TransitionModel(n_states, std::move(kernel));
}

void write_kernel_binary(const std::string& path, const TransitionModel& model) {
    auto out = open_out(path, true);
    const char magic[8] = {'S', 'R', 'K', 'B', '1', '\n', 0, 0};
    out.write(magic, sizeof(magic));
    const std::uint64_t ns = static_cast<std::uint64_t>(model.n_states());
    const std::uint64_t na = static_cast<std::uint64_t>(model.n_actions());
    out.write(reinterpret_cast<const char*>(&ns), sizeof(ns));
    out.write(reinterpret_cast<const char*>(&na), sizeof(na));
    for (int a = 0; a < model.n_actions(); ++a) {
        const SparseMatrix& m = model.matrix(a);
        const std::uint64_t nnz = static_cast<std::uint64_t>(m.nonZeros());
        out.write(reinterpret_cast<const char*>(&nnz), sizeof(nnz));
        for (int x = 0; x < model.n_states(); ++x)
            for (SparseMatrix::InnerIterator it(m, x); it; ++it) {
                const std::uint32_t from = static_cast<std::uint32_t>(x);
                const std::uint32_t to = static_cast<std::uint32_t>(it.col());
                const double p = it.value();
                out.write(reinterpret_cast<const char*>(&from), sizeof(from));
                out.write(reinterpret_cast<const char*>(&to), sizeof(to));
                out.write(reinterpret_cast<const char*>(&p), sizeof(p));
            }
    }
}

TransitionModel read_kernel_binary(const std::string& path) {
    auto in = open_in(path, true);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, "SRKB1\n\0\0", 8) != 0)
        throw std::runtime_error("kernel binary: bad magic in " + path);
    std::uint64_t ns = 0, na = 0;
    in.read(reinterpret_cast<char*>(&ns), sizeof(ns));
    in.read(reinterpret_cast<char*>(&na), sizeof(na));
    if (!in || ns == 0 || na == 0 || ns > (1u << 30) || na > (1u << 20))
        throw std::runtime_error("kernel binary: bad counts in " + path);
    std::vector<SparseMatrix> kernel;
    for (std::uint64_t a = 0; a < na; ++a) {
        std::uint64_t nnz = 0;
        in.read(reinterpret_cast<char*>(&nnz), sizeof(nnz));
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(nnz);
        for (std::uint64_t e = 0; e < nnz; ++e) {
            std::uint32_t from = 0, to = 0;
            double p = 0.0;
            in.read(reinterpret_cast<char*>(&from), sizeof(from));
            in.read(reinterpret_cast<char*>(&to), sizeof(to));
            in.read(reinterpret_cast<char*>(&p), sizeof(p));
            trips.emplace_back(static_cast<int>(from), static_cast<int>(to), p);
        }
        if (!in) throw std::runtime_error("kernel binary: truncated file " + path);
        SparseMatrix m(static_cast<int>(ns), static_cast<int>(ns));
        m.setFromTriplets(trips.begin(), trips.end());
        kernel.push_back(std::move(m));
    }
    return TransitionModel(static_cast<int>(ns), std::move(kernel));
}

void write_value_table_json(const std::string& path, const ValueTable& table,
                            const StateGrid* grid) {
    json values = json::array();
    for (int k = 0; k <= table.horizon(); ++k) {
        json row = json::array();
        for (int x = 0; x < table.n_states(); ++x) row.push_back(table.values(k, x));
        values.push_back(std::move(row));
    }
    json j{{"kind", to_string(table.kind)},
           {"horizon", table.horizon()},
           {"n_states", table.n_states()},
           {"values", std::move(values)}};
    if (grid) j["grid"] = grid_to_json(*grid);
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

StoredValueTable read_value_table_json(const std::string& path) {
    auto in = open_in(path);
    const json j = json::parse(in);
    StoredValueTable stored;
    stored.table.kind = value_kind_from_string(j.at("kind").get<std::string>());
    const int horizon = j.at("horizon").get<int>();
    const int n_states = j.at("n_states").get<int>();
    stored.table.values.resize(horizon + 1, n_states);
    for (int k = 0; k <= horizon; ++k)
        for (int x = 0; x < n_states; ++x)
            stored.table.values(k, x) = j.at("values")[static_cast<size_t>(k)]
                                            [static_cast<size_t>(x)].get<double>();
    if (j.contains("grid")) stored.grid = grid_from_json(j.at("grid"));
    return stored;
}

void write_rbf_json(const std::string& path, const RbfModel& model) {
    json centers = json::array();
    for (int c = 0; c < model.basis_count(); ++c) {
        json row = json::array();
        for (int a = 0; a < model.centers.cols(); ++a) row.push_back(model.centers(c, a));
        centers.push_back(std::move(row));
    }
    json stages = json::array();
    for (int k = 0; k < model.horizon; ++k) {
        if (!model.has_weights[static_cast<size_t>(k)]) continue;
        json w = json::array();
        for (int j = 0; j < model.basis_count(); ++j) w.push_back(model.weights(k, j));
        stages.push_back(json{{"stage", k}, {"w", std::move(w)}});
    }
    const json j{{"epsilon", model.epsilon},
                 {"horizon", model.horizon},
                 {"centers", std::move(centers)},
                 {"weights", std::move(stages)}};
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

RbfModel read_rbf_json(const std::string& path) {
    auto in = open_in(path);
    const json j = json::parse(in);
    RbfModel model;
    model.epsilon = j.at("epsilon").get<double>();
    model.horizon = j.at("horizon").get<int>();
    const auto& centers = j.at("centers");
    const int count = static_cast<int>(centers.size());
    const int dim = static_cast<int>(centers.at(0).size());
    model.centers.resize(count, dim);
    for (int c = 0; c < count; ++c)
        for (int a = 0; a < dim; ++a)
            model.centers(c, a) = centers[static_cast<size_t>(c)][static_cast<size_t>(a)]
                                      .get<double>();
    model.weights = Matrix::Zero(model.horizon, count);
    model.has_weights.assign(static_cast<size_t>(model.horizon), 0);
    for (const auto& stage : j.at("weights")) {
        const int k = stage.at("stage").get<int>();
        for (int w = 0; w < count; ++w)
            model.weights(k, w) = stage.at("w")[static_cast<size_t>(w)].get<double>();
        model.has_weights[static_cast<size_t>(k)] = 1;
    }
    model.validate();
    return model;
}

void write_error_report_csv(const std::string& path, const ErrorReport& report) {
    auto out = open_out(path);
    out << "method,timestep,distance\n";
    for (size_t m = 0; m < report.methods.size(); ++m)
        for (int j = 0; j < report.distances.cols(); ++j)
            out << report.methods[m] << "," << j << ","
                << format_double(report.distances(static_cast<int>(m), j)) << "\n";
}

void write_timing_csv(const std::string& path, const std::vector<TimedRun>& runs) {
    auto out = open_out(path);
    out << "name,seconds\n";
    for (const auto& run : runs)
        out << run.name << "," << format_double(run.seconds) << "\n";
}

}  // namespace stochreach
