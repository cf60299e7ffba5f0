#pragma once

#include <string>

namespace dmeta::cli {

// Reads results.csv from data_dir, prints a mean +/- standard-error accuracy
// table, and writes table.txt plus an SVG of mean test regret against the
// number of training tasks into out_dir. Refuses empty or mixed-hash CSVs.
std::string cmd_report(const std::string& data_dir, const std::string& out_dir);

}  // namespace dmeta::cli
