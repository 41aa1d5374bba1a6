#include "lffc/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "lffc/config.hpp"
#include "lffc/csv.hpp"

namespace fs = std::filesystem;

namespace lffc {

namespace {

constexpr double kW = 800.0;
constexpr double kH = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color;
    bool markers = false;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// One fixed-size chart panel as a <g> body; y grows downward in SVG, so the
// value axis is flipped. Equal min and max are padded so flat series stay
// visible.
std::string panel(const std::string& title, const std::string& xlabel,
                  const std::vector<Series>& series, bool point_labels) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmin -= 1; xmax += 1; }
    if (ymax == ymin) { ymin -= 1; ymax += 1; }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto X = [&](double v) {
        return kLeft + (v - xmin) / (xmax - xmin) * (kW - kLeft - kRight);
    };
    auto Y = [&](double v) {
        return kH - kBottom - (v - ymin) / (ymax - ymin) * (kH - kTop - kBottom);
    };

    std::string svg;
    svg += "<rect width=\"" + coord(kW) + "\" height=\"" + coord(kH) +
           "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + coord(kW / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + title + "</text>\n";

    svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kH - kBottom) +
           "\" x2=\"" + coord(kW - kRight) + "\" y2=\"" + coord(kH - kBottom) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kTop) + "\" x2=\"" +
           coord(kLeft) + "\" y2=\"" + coord(kH - kBottom) +
           "\" stroke=\"black\"/>\n";

    svg += "<text x=\"" + coord(kLeft) + "\" y=\"" + coord(kH - kBottom + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">" + num(xmin) + "</text>\n";
    svg += "<text x=\"" + coord(kW - kRight) + "\" y=\"" +
           coord(kH - kBottom + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">" + num(xmax) + "</text>\n";
    svg += "<text x=\"" + coord(kLeft - 6) + "\" y=\"" + coord(kH - kBottom) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">" + num(ymin) + "</text>\n";
    svg += "<text x=\"" + coord(kLeft - 6) + "\" y=\"" + coord(kTop + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">" + num(ymax) + "</text>\n";
    svg += "<text x=\"" + coord((kLeft + kW - kRight) / 2) + "\" y=\"" +
           coord(kH - 14) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">" + xlabel + "</text>\n";

    double legend_y = kTop + 6;
    for (const Series& s : series) {
        std::string pts;
        for (size_t k = 0; k < s.x.size(); ++k) {
            if (k) pts += ' ';
            pts += coord(X(s.x[k])) + "," + coord(Y(s.y[k]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        if (s.markers) {
            for (size_t k = 0; k < s.x.size(); ++k) {
                svg += "<circle cx=\"" + coord(X(s.x[k])) + "\" cy=\"" +
                       coord(Y(s.y[k])) + "\" r=\"3\" fill=\"" + s.color +
                       "\"/>\n";
            }
        }
        if (point_labels) {
            for (size_t k = 0; k < s.x.size(); ++k) {
                svg += "<text x=\"" + coord(X(s.x[k])) + "\" y=\"" +
                       coord(Y(s.y[k]) - 8) +
                       "\" font-family=\"sans-serif\" font-size=\"10\" "
                       "text-anchor=\"middle\">" + num(s.y[k]) + "</text>\n";
            }
        }
        if (!s.label.empty()) {
            svg += "<line x1=\"" + coord(kW - kRight - 150) + "\" y1=\"" +
                   coord(legend_y) + "\" x2=\"" + coord(kW - kRight - 126) +
                   "\" y2=\"" + coord(legend_y) + "\" stroke=\"" + s.color +
                   "\" stroke-width=\"2\"/>\n";
            svg += "<text x=\"" + coord(kW - kRight - 120) + "\" y=\"" +
                   coord(legend_y + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label +
                   "</text>\n";
            legend_y += 16;
        }
    }
    return svg;
}

// Stacks the panels vertically inside a single SVG root.
std::string document(const std::vector<std::string>& panels) {
    double height = kH * panels.size();
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kW) +
        "\" height=\"" + coord(height) + "\" viewBox=\"0 0 " + coord(kW) +
        " " + coord(height) + "\">\n";
    for (size_t i = 0; i < panels.size(); ++i) {
        svg += "<g transform=\"translate(0," + coord(kH * i) + ")\">\n";
        svg += panels[i];
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string episode_dir(const std::string& campaign_dir, int iteration) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "/episode_%03d", iteration);
    return campaign_dir + buf;
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& campaign_dir,
                                    const std::string& out_dir) {
    auto summary = read_summary_csv(campaign_dir + "/summary.csv");
    if (summary.empty()) {
        throw InputError(campaign_dir + ": campaign summary is empty");
    }
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    Series jser;
    jser.label = "J";
    jser.color = "#1f77b4";
    jser.markers = true;
    Series eff_n{{}, {}, "effort N", "#1f77b4", true};
    Series eff_av{{}, {}, "effort A_v", "#d62728", true};
    for (const SummaryRow& r : summary) {
        jser.x.push_back(r.iteration);
        jser.y.push_back(r.J);
        eff_n.x.push_back(r.iteration);
        eff_n.y.push_back(r.effort_N);
        eff_av.x.push_back(r.iteration);
        eff_av.y.push_back(r.effort_Av);
    }

    std::string j_path = out_dir + "/J.svg";
    write_file(j_path, document({panel("Combined index J per iteration",
                                       "iteration", {jser}, true)}));
    written.push_back(j_path);

    std::string eff_path = out_dir + "/effort.svg";
    write_file(eff_path, document({panel("Feedback effort per iteration",
                                         "iteration", {eff_n, eff_av}, false)}));
    written.push_back(eff_path);

    // Tracking overlay: first and last episodes. References are recovered
    // from the stored error, r = e + y, so no scenario file is needed.
    int first = summary.front().iteration;
    int last = summary.back().iteration;
    Trajectory y1 = read_trajectory_csv(episode_dir(campaign_dir, first) + "/y.csv");
    Trajectory e1 = read_trajectory_csv(episode_dir(campaign_dir, first) + "/e.csv");
    Trajectory yl = read_trajectory_csv(episode_dir(campaign_dir, last) + "/y.csv");

    std::vector<std::string> overlay_panels;
    for (int ch = 0; ch < 2; ++ch) {
        Series ref{{}, {}, "reference", "#444444", false};
        Series sfirst{{}, {}, "iteration " + std::to_string(first), "#d62728",
                      false};
        Series slast{{}, {}, "iteration " + std::to_string(last), "#1f77b4",
                     false};
        for (int k = 0; k < y1.grid.n; ++k) {
            double t = y1.grid.t(k);
            ref.x.push_back(t);
            ref.y.push_back(e1.values[ch][k] + y1.values[ch][k]);
            sfirst.x.push_back(t);
            sfirst.y.push_back(y1.values[ch][k]);
            slast.x.push_back(t);
            slast.y.push_back(yl.values[ch][k]);
        }
        std::string title = ch == 0 ? "Output 1 tracking" : "Output 2 tracking";
        overlay_panels.push_back(panel(title, "t (s)", {ref, sfirst, slast}, false));
    }
    std::string track_path = out_dir + "/tracking.svg";
    write_file(track_path, document(overlay_panels));
    written.push_back(track_path);
    return written;
}

}  // namespace lffc
