#include "lffc/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lffc/config.hpp"

namespace fs = std::filesystem;

namespace lffc {

namespace {

constexpr double kGridTol = 1e-9;

// from_chars keeps parsing locale-independent and round-trip exact.
double parse_double(const std::string& field, const std::string& path) {
    double v = 0.0;
    const char* b = field.data();
    const char* e = b + field.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) {
        throw InputError(path + ": not a number: '" + field + "'");
    }
    return v;
}

int parse_int(const std::string& field, const std::string& path) {
    int v = 0;
    const char* b = field.data();
    const char* e = b + field.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) {
        throw InputError(path + ": not an integer: '" + field + "'");
    }
    return v;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path,
                                                const std::string& header) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) {
        throw InputError(path + ": expected header '" + header + "', got '" +
                         line + "'");
    }
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split_row(line));
    }
    return rows;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string trajectory_header(int channels) {
    std::string h = "t";
    for (int i = 0; i < channels; ++i) h += ",ch" + std::to_string(i);
    return h;
}

// Reads a trajectory whose time column must match the expected grid.
Trajectory read_trajectory_on_grid(const std::string& path, const Grid& grid,
                                   int channels) {
    auto rows = read_rows(path, trajectory_header(channels));
    if (static_cast<int>(rows.size()) != grid.n) {
        throw InputError(path + ": expected " + std::to_string(grid.n) +
                         " rows, got " + std::to_string(rows.size()));
    }
    Trajectory traj = make_trajectory(grid, channels);
    for (int k = 0; k < grid.n; ++k) {
        const auto& row = rows[k];
        if (static_cast<int>(row.size()) != channels + 1) {
            throw InputError(path + ": row " + std::to_string(k + 2) +
                             " has wrong field count");
        }
        double t = parse_double(row[0], path);
        if (std::abs(t - grid.t(k)) > kGridTol) {
            throw InputError(path + ": time column does not match the grid");
        }
        for (int i = 0; i < channels; ++i) {
            traj.values[i][k] = parse_double(row[i + 1], path);
        }
    }
    return traj;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::string text = trajectory_header(traj.channels()) + "\n";
    for (int k = 0; k < traj.grid.n; ++k) {
        text += format_double(traj.grid.t(k));
        for (int i = 0; i < traj.channels(); ++i) {
            text += ',';
            text += format_double(traj.values[i][k]);
        }
        text += '\n';
    }
    write_text(path, text);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_row(line);
    int channels = static_cast<int>(header.size()) - 1;
    if (channels < 1 || header[0] != "t") {
        throw InputError(path + ": expected header t,ch0,...");
    }
    for (int i = 0; i < channels; ++i) {
        if (header[i + 1] != "ch" + std::to_string(i)) {
            throw InputError(path + ": expected header t,ch0,...");
        }
    }
    std::vector<double> times;
    std::vector<std::vector<double>> cols(channels);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto row = split_row(line);
        if (static_cast<int>(row.size()) != channels + 1) {
            throw InputError(path + ": inconsistent field count");
        }
        times.push_back(parse_double(row[0], path));
        for (int i = 0; i < channels; ++i) {
            cols[i].push_back(parse_double(row[i + 1], path));
        }
    }
    if (times.size() < 2) throw InputError(path + ": needs at least 2 samples");
    Grid grid = make_grid(times.front(), times.back(), times[1] - times[0]);
    if (grid.n != static_cast<int>(times.size())) {
        throw InputError(path + ": time column is not uniformly spaced");
    }
    Trajectory traj = make_trajectory(grid, channels);
    for (int i = 0; i < channels; ++i) traj.values[i] = std::move(cols[i]);
    return traj;
}

void write_episode(const std::string& dir, const EpisodeResult& episode) {
    fs::create_directories(dir);
    write_trajectory_csv(dir + "/y.csv", episode.y);
    write_trajectory_csv(dir + "/u.csv", episode.u);
    write_trajectory_csv(dir + "/uc.csv", episode.u_C);
    write_trajectory_csv(dir + "/uf.csv", episode.u_F);
    write_trajectory_csv(dir + "/e.csv", episode.e);
}

EpisodeResult read_episode(const std::string& dir, const Grid& grid) {
    EpisodeResult ep;
    ep.y = read_trajectory_on_grid(dir + "/y.csv", grid, 2);
    ep.u = read_trajectory_on_grid(dir + "/u.csv", grid, 2);
    ep.u_C = read_trajectory_on_grid(dir + "/uc.csv", grid, 2);
    ep.u_F = read_trajectory_on_grid(dir + "/uf.csv", grid, 2);
    ep.e = read_trajectory_on_grid(dir + "/e.csv", grid, 2);
    return ep;
}

void write_memory_csv(const std::string& path, const MemoryBank& memory) {
    const Grid& grid = memory.u_F_prev.grid;
    std::string text = "t,uF_N,uF_Av,uC_N,uC_Av\n";
    for (int k = 0; k < grid.n; ++k) {
        text += format_double(grid.t(k));
        text += ',';
        text += format_double(memory.u_F_prev.values[0][k]);
        text += ',';
        text += format_double(memory.u_F_prev.values[1][k]);
        text += ',';
        text += format_double(memory.u_C_prev.values[0][k]);
        text += ',';
        text += format_double(memory.u_C_prev.values[1][k]);
        text += '\n';
    }
    write_text(path, text);
}

MemoryBank read_memory_csv(const std::string& path, const Grid& grid,
                           int iteration) {
    auto rows = read_rows(path, "t,uF_N,uF_Av,uC_N,uC_Av");
    if (static_cast<int>(rows.size()) != grid.n) {
        throw InputError(path + ": expected " + std::to_string(grid.n) +
                         " rows, got " + std::to_string(rows.size()));
    }
    MemoryBank memory;
    memory.iteration = iteration;
    memory.u_F_prev = make_trajectory(grid, 2);
    memory.u_C_prev = make_trajectory(grid, 2);
    for (int k = 0; k < grid.n; ++k) {
        const auto& row = rows[k];
        if (row.size() != 5) {
            throw InputError(path + ": row " + std::to_string(k + 2) +
                             " has wrong field count");
        }
        double t = parse_double(row[0], path);
        if (std::abs(t - grid.t(k)) > kGridTol) {
            throw InputError(path + ": time column does not match the grid");
        }
        memory.u_F_prev.values[0][k] = parse_double(row[1], path);
        memory.u_F_prev.values[1][k] = parse_double(row[2], path);
        memory.u_C_prev.values[0][k] = parse_double(row[3], path);
        memory.u_C_prev.values[1][k] = parse_double(row[4], path);
    }
    return memory;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
    std::string text = "iteration,J,effort_N,effort_Av\n";
    for (const SummaryRow& r : rows) {
        text += std::to_string(r.iteration);
        text += ',';
        text += format_double(r.J);
        text += ',';
        text += format_double(r.effort_N);
        text += ',';
        text += format_double(r.effort_Av);
        text += '\n';
    }
    write_text(path, text);
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
    auto rows = read_rows(path, "iteration,J,effort_N,effort_Av");
    std::vector<SummaryRow> out;
    for (size_t k = 0; k < rows.size(); ++k) {
        const auto& row = rows[k];
        if (row.size() != 4) {
            throw InputError(path + ": row " + std::to_string(k + 2) +
                             " has wrong field count");
        }
        out.push_back({parse_int(row[0], path), parse_double(row[1], path),
                       parse_double(row[2], path), parse_double(row[3], path)});
    }
    return out;
}

void write_report_csv(const std::string& path, const IndexReport& report) {
    std::string text =
        "riae_N,riae_Av,ritae_1,ritae_2,ritae_3,ritae_4,riavu_N,riavu_Av,J\n";
    auto r = report.ratios();
    for (int i = 0; i < 8; ++i) {
        text += format_double(r[i]);
        text += ',';
    }
    text += format_double(report.J);
    text += '\n';
    write_text(path, text);
}

std::string report_table(const IndexReport& report) {
    auto line = [](const std::string& name, double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "  %-8s %10.6f\n", name.c_str(), v);
        return std::string(buf);
    };
    std::string text;
    text += line("RIAE_1", report.riae[0]);
    text += line("RIAE_2", report.riae[1]);
    for (int i = 0; i < 4; ++i) {
        text += line("RITAE_" + std::to_string(i + 1), report.ritae[i]);
    }
    text += line("RIAVU_1", report.riavu[0]);
    text += line("RIAVU_2", report.riavu[1]);
    text += line("J", report.J);
    return text;
}

}  // namespace lffc
