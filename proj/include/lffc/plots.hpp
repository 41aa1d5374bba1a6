#pragma once

#include <string>
#include <vector>

namespace lffc {

// Renders the campaign's static SVG plots from its persisted CSVs:
// J vs iteration, first-vs-last tracking overlay, and feedback effort vs
// iteration. Numbers printed into SVG text labels match the summary CSV
// to 6 significant digits. Returns the list of files written.
std::vector<std::string> emit_plots(const std::string& campaign_dir,
                                    const std::string& out_dir);

}  // namespace lffc
