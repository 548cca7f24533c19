#include "readout/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace readout::io {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_scan(const std::vector<ScanPoint>& curve, const std::string& x_name,
                     double x_scale) {
  std::ostringstream os;
  os << x_name
     << ",fidelity,threshold,p_correct_bright,p_correct_dark,saturation,detected_mean,"
        "leak_exposure\n";
  for (const auto& pt : curve) {
    os << format_double(pt.x * x_scale) << ',' << format_double(pt.report.fidelity) << ','
       << pt.report.threshold << ',' << format_double(pt.report.p_correct_bright) << ','
       << format_double(pt.report.p_correct_dark) << ',' << format_double(pt.saturation)
       << ',' << format_double(pt.detected_mean) << ',' << format_double(pt.leak_exposure)
       << '\n';
  }
  return os.str();
}

std::string csv_pmf(const CountDistribution& dist) {
  std::ostringstream os;
  os << "N,probability\n";
  for (std::size_t n = 0; n <= dist.n_max(); ++n)
    os << n << ',' << format_double(dist.p(n)) << '\n';
  return os.str();
}

std::string csv_histogram(const CountHistogram& hist) {
  std::ostringstream os;
  os << "N,count\n";
  for (std::size_t n = 0; n < hist.counts.size(); ++n)
    os << n << ',' << hist.counts[n] << '\n';
  return os.str();
}

}  // namespace readout::io
