#pragma once

#include <filesystem>
#include <string>

#include "readout/config.hpp"
#include "readout/montecarlo.hpp"
#include "readout/scans.hpp"

namespace readout::io {

// Throws readout::IoError on any stream failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::string csv_scan(const std::vector<ScanPoint>& curve, const std::string& x_name,
                     double x_scale = 1.0);
std::string csv_pmf(const CountDistribution& dist);
std::string csv_histogram(const CountHistogram& hist);

// Fixed-format number used in all CSV/JSON payloads so identical inputs
// produce identical bytes.
std::string format_double(double v);

}  // namespace readout::io
