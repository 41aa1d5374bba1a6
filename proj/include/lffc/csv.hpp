#pragma once

#include <string>
#include <vector>

#include "lffc/harness.hpp"
#include "lffc/metrics.hpp"
#include "lffc/signals.hpp"

namespace lffc {

// Shortest round-trip decimal form of a double (17 significant digits).
std::string format_double(double v);

// Trajectory files use the header t,ch0,ch1,... with one row per sample.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

// Episode directory layout: y.csv, u.csv, uc.csv, uf.csv, e.csv.
void write_episode(const std::string& dir, const EpisodeResult& episode);
EpisodeResult read_episode(const std::string& dir, const Grid& grid);

// Memory bank rows: t,uF_N,uF_Av,uC_N,uC_Av.
void write_memory_csv(const std::string& path, const MemoryBank& memory);
MemoryBank read_memory_csv(const std::string& path, const Grid& grid,
                           int iteration);

// Campaign summary rows: iteration,J,effort_N,effort_Av.
struct SummaryRow {
    int iteration;
    double J;
    double effort_N;
    double effort_Av;
};
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

// IndexReport as a single CSV row plus a readable table.
void write_report_csv(const std::string& path, const IndexReport& report);
std::string report_table(const IndexReport& report);

}  // namespace lffc
