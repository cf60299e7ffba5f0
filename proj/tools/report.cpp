#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "experiment.hpp"

namespace fs = std::filesystem;

namespace dmeta::cli {

namespace {

struct Stats {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    s.n = xs.size();
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double var = 0.0;
        for (double x : xs) var += (x - s.mean) * (x - s.mean);
        var /= static_cast<double>(xs.size() - 1);
        s.se = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return s;
}

std::string pct(const Stats& s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6.2f +/- %5.2f %%", 100.0 * s.mean, 100.0 * s.se);
    return buf;
}

struct Series {
    std::vector<double> xs;
    std::vector<double> ys;
    std::string label;
};

std::string render_svg(const std::vector<Series>& series, const std::string& title) {
    const double width = 800.0, height = 500.0;
    const double ml = 70.0, mr = 30.0, mt = 40.0, mb = 55.0;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series) {
        for (double x : s.xs) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
        for (double y : s.ys) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    double ypad = 0.08 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
           "width=\"800\" height=\"500\">\n";
    svg << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
        << "</text>\n";
    // axes
    svg << "<polyline fill=\"none\" stroke=\"black\" points=\"" << px(xmin) << ',' << py(ymax)
        << ' ' << px(xmin) << ',' << py(ymin) << ' ' << px(xmax) << ',' << py(ymin) << "\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double y = ymin + (ymax - ymin) * i / 5.0;
        svg << "<line x1=\"" << px(xmin) - 4 << "\" y1=\"" << py(y) << "\" x2=\"" << px(xmin)
            << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "%.3g", y);
        svg << "<text x=\"" << px(xmin) - 8 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << lab << "</text>\n";
    }
    int xticks = std::min(10, static_cast<int>(std::lround(xmax - xmin)));
    xticks = std::max(xticks, 1);
    for (int i = 0; i <= xticks; ++i) {
        double x = xmin + (xmax - xmin) * i / xticks;
        svg << "<line x1=\"" << px(x) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(x)
            << "\" y2=\"" << py(ymin) + 4 << "\" stroke=\"black\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "%.3g", x);
        svg << "<text x=\"" << px(x) << "\" y=\"" << py(ymin) + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << lab << "</text>\n";
    }
    svg << "<text x=\"" << (ml + (width - ml - mr) / 2) << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">training tasks</text>\n";
    svg << "<text x=\"18\" y=\"" << (mt + (height - mt - mb) / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (mt + (height - mt - mb) / 2) << ")\">mean test regret</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = palette[si % 5];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            svg << px(s.xs[i]) << ',' << py(s.ys[i]) << ' ';
        svg << "\"/>\n";
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            svg << "<circle cx=\"" << px(s.xs[i]) << "\" cy=\"" << py(s.ys[i])
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << width - mr - 10 << "\" y=\"" << mt + 18.0 * si + 12
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string cmd_report(const std::string& data_dir, const std::string& out_dir) {
    fs::path cpath = fs::path(data_dir) / "results.csv";
    std::vector<ResultRow> rows = parse_csv(cpath.string());
    if (rows.empty()) throw DataError("results file '" + cpath.string() + "' has no rows");
    std::set<std::string> hashes;
    for (const ResultRow& r : rows) hashes.insert(r.config_hash);
    if (hashes.size() > 1)
        throw DataError("results file mixes " + std::to_string(hashes.size()) +
                        " different config hashes; refusing to aggregate");

    int max_train = 0;
    for (const ResultRow& r : rows) max_train = std::max(max_train, r.train_tasks);
    std::set<int> shot_set;
    for (const ResultRow& r : rows) shot_set.insert(r.shots);
    std::vector<int> shots(shot_set.begin(), shot_set.end());

    // Accuracy table at the full training prefix.
    std::map<std::pair<std::string, int>, std::vector<double>> acc;
    for (const ResultRow& r : rows) {
        if (r.variant == "meta_initialized" && r.train_tasks != max_train) continue;
        acc[{r.variant, r.shots}].push_back(r.accuracy);
    }
    const std::size_t cell_width = 18;
    std::ostringstream table;
    table << "Experiment " << rows.front().experiment_id << " (config " << *hashes.begin()
          << ", V^2 = " << rows.front().v_squared << ")\n";
    table << "Accuracy as a fraction of the offline-optimal parameter value, mean +/- SE:\n\n";
    table << "variant             ";
    for (int s : shots) {
        std::string head = std::to_string(s) + "-shot";
        table << " | " << head << std::string(cell_width - head.size(), ' ');
    }
    table << "\n";
    table << std::string(20 + shots.size() * (cell_width + 3), '-') << "\n";
    for (const std::string& variant : {std::string("single_task"), std::string("meta_initialized")}) {
        table << variant << std::string(20 - variant.size(), ' ');
        for (int s : shots) {
            auto it = acc.find({variant, s});
            std::string cell = it == acc.end() ? std::string("-") : pct(stats_of(it->second));
            table << " | " << cell << std::string(cell_width - std::min(cell_width, cell.size()), ' ');
        }
        table << "\n";
    }

    // Mean regret against the number of training tasks per shot count.
    std::vector<Series> series;
    for (int s : shots) {
        std::map<int, std::vector<double>> by_prefix;
        std::vector<double> single;
        for (const ResultRow& r : rows) {
            if (r.shots != s) continue;
            if (r.variant == "meta_initialized") by_prefix[r.train_tasks].push_back(r.regret);
            else single.push_back(r.regret);
        }
        Series meta;
        meta.label = "meta, " + std::to_string(s) + "-shot";
        for (const auto& [p, v] : by_prefix) {
            meta.xs.push_back(p);
            meta.ys.push_back(stats_of(v).mean);
        }
        series.push_back(std::move(meta));
        if (!single.empty()) {
            Series base;
            base.label = "single-task, " + std::to_string(s) + "-shot";
            double mean = stats_of(single).mean;
            base.xs = {0.0, static_cast<double>(max_train)};
            base.ys = {mean, mean};
            series.push_back(std::move(base));
        }
    }
    std::string svg = render_svg(series, "Mean test regret vs training tasks (" +
                                             rows.front().experiment_id + ")");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + out_dir + "'");
    std::ofstream tout(fs::path(out_dir) / "table.txt");
    if (!tout) throw DataError("cannot write table.txt");
    tout << table.str();
    std::ofstream sout(fs::path(out_dir) / "regret_vs_tasks.svg");
    if (!sout) throw DataError("cannot write regret_vs_tasks.svg");
    sout << svg;
    return table.str();
}

}  // namespace dmeta::cli
