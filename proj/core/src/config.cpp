#include "readout/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace readout {

namespace {

enum class Kind { Double, U64, UInt, Bool, String };

struct KeyBinding {
  const char* key;
  Kind kind;
  void* ptr;
};

std::vector<KeyBinding> bindings(Config& c) {
  return {
      {"atomic.gamma_mhz", Kind::Double, &c.atomic.gamma_mhz},
      {"atomic.ground_splitting_ghz", Kind::Double, &c.atomic.ground_splitting_ghz},
      {"atomic.hfp_splitting_mhz", Kind::Double, &c.atomic.hfp_splitting_mhz},
      {"atomic.delta21_mhz", Kind::Double, &c.atomic.delta21_mhz},
      {"atomic.saturation", Kind::Double, &c.atomic.saturation},
      {"cavity.g_mhz", Kind::Double, &c.cavity.g_mhz},
      {"cavity.kappa_mhz", Kind::Double, &c.cavity.kappa_mhz},
      {"cavity.delta_a_mhz", Kind::Double, &c.cavity.delta_a_mhz},
      {"cavity.delta_c_mhz", Kind::Double, &c.cavity.delta_c_mhz},
      {"cavity.g_averaging", Kind::String, &c.cavity.g_averaging},
      {"detection.cavity_fraction", Kind::String, &c.detection.cavity_fraction},
      {"detection.mirror_fraction", Kind::Double, &c.detection.mirror_fraction},
      {"detection.path_detector_efficiency", Kind::Double,
       &c.detection.path_detector_efficiency},
      {"detection.dark_rate_hz", Kind::Double, &c.detection.dark_rate_hz},
      {"detection.stray_rate_hz", Kind::Double, &c.detection.stray_rate_hz},
      {"readout.probe_duration_us", Kind::Double, &c.readout.probe_duration_us},
      {"readout.target_mean_bright", Kind::Double, &c.readout.target_mean_bright},
      {"readout.prep_error", Kind::Double, &c.readout.prep_error},
      {"readout.broadening_q", Kind::Double, &c.readout.broadening_q},
      {"readout.dark_state_rate_hz", Kind::Double, &c.readout.dark_state_rate_hz},
      {"readout.cavity_modified_branching", Kind::Bool,
       &c.readout.cavity_modified_branching},
      {"trap.depth_mk", Kind::Double, &c.trap.depth_mk},
      {"trap.recoil_nk", Kind::Double, &c.trap.recoil_nk},
      {"trap.geometry", Kind::String, &c.trap.geometry},
      {"trap.survival_model", Kind::String, &c.trap.survival_model},
      {"scenario.shots", Kind::U64, &c.scenario.shots},
      {"scenario.seed", Kind::U64, &c.scenario.seed},
      {"scenario.workers", Kind::UInt, &c.scenario.workers},
      {"scenario.tv_tolerance", Kind::Double, &c.scenario.tv_tolerance},
      {"scenario.fluorescence_grid_mhz", Kind::String, &c.scenario.fluorescence_grid_mhz},
      {"scenario.fluorescence_scan_prep_error", Kind::Double,
       &c.scenario.fluorescence_scan_prep_error},
      {"scenario.transmission_grid_mhz", Kind::String, &c.scenario.transmission_grid_mhz},
      {"scenario.transmission_duration_us", Kind::Double,
       &c.scenario.transmission_duration_us},
      {"scenario.transmission_target_dark", Kind::Double,
       &c.scenario.transmission_target_dark},
      {"scenario.transmission_prep_error", Kind::Double,
       &c.scenario.transmission_prep_error},
      {"scenario.transmission_histogram_detunings_mhz", Kind::String,
       &c.scenario.transmission_histogram_detunings_mhz},
      {"scenario.fig1_eta_cavity", Kind::Double, &c.scenario.fig1_eta_cavity},
      {"scenario.fig1_eta_na", Kind::Double, &c.scenario.fig1_eta_na},
      {"scenario.scattered_grid", Kind::String, &c.scenario.scattered_grid},
  };
}

std::string trim(std::string_view s) {
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  return std::string(first, last);
}

void assign(const KeyBinding& b, const std::string& value, int line) {
  switch (b.kind) {
    case Kind::Double: {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        throw ConfigParseError(line, "expected a number for " + std::string(b.key));
      }
      if (used != value.size())
        throw ConfigParseError(line, "trailing characters after number for " + std::string(b.key));
      *static_cast<double*>(b.ptr) = v;
      break;
    }
    case Kind::U64: {
      std::uint64_t v = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigParseError(line, "expected an unsigned integer for " + std::string(b.key));
      *static_cast<std::uint64_t*>(b.ptr) = v;
      break;
    }
    case Kind::UInt: {
      unsigned v = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigParseError(line, "expected an unsigned integer for " + std::string(b.key));
      *static_cast<unsigned*>(b.ptr) = v;
      break;
    }
    case Kind::Bool: {
      if (value == "true" || value == "1") {
        *static_cast<bool*>(b.ptr) = true;
      } else if (value == "false" || value == "0") {
        *static_cast<bool*>(b.ptr) = false;
      } else {
        throw ConfigParseError(line, "expected true/false for " + std::string(b.key));
      }
      break;
    }
    case Kind::String:
      *static_cast<std::string*>(b.ptr) = value;
      break;
  }
}

std::string format_value(const KeyBinding& b) {
  std::ostringstream os;
  switch (b.kind) {
    case Kind::Double: {
      os.precision(17);
      double v = *static_cast<const double*>(b.ptr);
      os << v;
      break;
    }
    case Kind::U64:
      os << *static_cast<const std::uint64_t*>(b.ptr);
      break;
    case Kind::UInt:
      os << *static_cast<const unsigned*>(b.ptr);
      break;
    case Kind::Bool:
      os << (*static_cast<const bool*>(b.ptr) ? "true" : "false");
      break;
    case Kind::String:
      os << *static_cast<const std::string*>(b.ptr);
      break;
  }
  return os.str();
}

}  // namespace

Config parse_config(const std::string& text) {
  Config cfg;
  auto keys = bindings(cfg);

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigParseError(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigParseError(line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigParseError(line_no, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigParseError(line_no, "empty key");
    if (key.find('.') == std::string::npos) {
      if (section.empty())
        throw ConfigParseError(line_no, "key '" + key + "' outside any section");
      key = section + "." + key;
    }
    const auto it = std::find_if(keys.begin(), keys.end(),
                                 [&](const KeyBinding& b) { return key == b.key; });
    if (it == keys.end()) throw ConfigParseError(line_no, "unknown key '" + key + "'");
    assign(*it, value, line_no);
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const Config& cfg) {
  auto keys = bindings(const_cast<Config&>(cfg));
  std::ostringstream os;
  std::string section;
  for (const auto& b : keys) {
    const std::string key(b.key);
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) os << "\n";
      os << "[" << sec << "]\n";
      section = sec;
    }
    os << key.substr(dot + 1) << " = " << format_value(b) << "\n";
  }
  return os.str();
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad number in list: " + token);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::vector<std::string> validate(const Config& cfg) {
  std::vector<std::string> out;

  if (cfg.atomic.gamma_mhz <= 0.0) out.push_back("atomic.gamma_mhz must be > 0");
  if (cfg.atomic.ground_splitting_ghz <= 0.0)
    out.push_back("atomic.ground_splitting_ghz must be > 0");
  if (cfg.atomic.hfp_splitting_mhz <= 0.0) out.push_back("atomic.hfp_splitting_mhz must be > 0");
  if (cfg.atomic.delta21_mhz <= 0.0) out.push_back("atomic.delta21_mhz must be > 0");
  if (cfg.atomic.saturation < 0.0) out.push_back("atomic.saturation must be >= 0");

  if (cfg.cavity.g_mhz < 0.0) out.push_back("cavity.g must be >= 0");
  if (cfg.cavity.kappa_mhz <= 0.0) out.push_back("cavity.kappa must be > 0");
  if (cfg.cavity.g_averaging != "none" && cfg.cavity.g_averaging != "standing_wave")
    out.push_back("cavity.g_averaging must be none or standing_wave");

  if (cfg.detection.cavity_fraction != "auto") {
    try {
      const double beta = std::stod(cfg.detection.cavity_fraction);
      if (beta < 0.0 || beta > 1.0)
        out.push_back("detection.cavity_fraction must be in [0,1]");
    } catch (const std::exception&) {
      out.push_back("detection.cavity_fraction must be 'auto' or a number");
    }
  }
  if (cfg.atomic.gamma_mhz > 0.0 && cfg.cavity.kappa_mhz > 0.0) {
    for (auto& v : make_detection_chain(cfg).invariant_violations()) out.push_back(v);
  }

  if (cfg.readout.probe_duration_us <= 0.0) out.push_back("readout.probe_duration_us must be > 0");
  if (cfg.readout.target_mean_bright <= 0.0)
    out.push_back("readout.target_mean_bright must be > 0");
  if (cfg.readout.prep_error < 0.0 || cfg.readout.prep_error > 1.0)
    out.push_back("readout.prep_error must be in [0,1]");
  if (cfg.readout.broadening_q < 0.0) out.push_back("readout.broadening_q must be >= 0");
  if (cfg.readout.dark_state_rate_hz < 0.0)
    out.push_back("readout.dark_state_rate_hz must be >= 0");

  if (cfg.trap.depth_mk <= 0.0) out.push_back("trap.depth_mk must be > 0");
  if (cfg.trap.recoil_nk <= 0.0) out.push_back("trap.recoil_nk must be > 0");
  if (cfg.trap.geometry != "unidirectional" && cfg.trap.geometry != "balanced")
    out.push_back("trap.geometry must be unidirectional or balanced");
  if (cfg.trap.survival_model != "hard" && cfg.trap.survival_model != "exponential")
    out.push_back("trap.survival_model must be hard or exponential");

  if (cfg.scenario.shots == 0) out.push_back("scenario.shots must be >= 1");
  if (cfg.scenario.workers == 0) out.push_back("scenario.workers must be >= 1");
  if (cfg.scenario.tv_tolerance <= 0.0) out.push_back("scenario.tv_tolerance must be > 0");
  if (cfg.scenario.transmission_duration_us <= 0.0)
    out.push_back("scenario.transmission_duration_us must be > 0");
  if (cfg.scenario.transmission_target_dark <= 0.0)
    out.push_back("scenario.transmission_target_dark must be > 0");
  if (cfg.scenario.transmission_prep_error < 0.0 || cfg.scenario.transmission_prep_error > 1.0)
    out.push_back("scenario.transmission_prep_error must be in [0,1]");
  if (cfg.scenario.fluorescence_scan_prep_error < 0.0 ||
      cfg.scenario.fluorescence_scan_prep_error > 1.0)
    out.push_back("scenario.fluorescence_scan_prep_error must be in [0,1]");
  if (cfg.scenario.fig1_eta_cavity <= 0.0 || cfg.scenario.fig1_eta_cavity > 1.0)
    out.push_back("scenario.fig1_eta_cavity must be in (0,1]");
  if (cfg.scenario.fig1_eta_na <= 0.0 || cfg.scenario.fig1_eta_na > 1.0)
    out.push_back("scenario.fig1_eta_na must be in (0,1]");

  auto check_grid = [&out](const std::string& text, const char* key, double lo, double hi) {
    try {
      for (double v : parse_number_list(text)) {
        if (v < lo || v >= hi) {
          out.push_back(std::string(key) + " entries must lie in [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + ")");
          return;
        }
      }
    } catch (const std::exception&) {
      out.push_back(std::string(key) + " must be a comma-separated number list");
    }
  };
  check_grid(cfg.scenario.fluorescence_grid_mhz, "scenario.fluorescence_grid_mhz", 0.0,
             cfg.atomic.hfp_splitting_mhz);
  check_grid(cfg.scenario.transmission_grid_mhz, "scenario.transmission_grid_mhz", 0.0, 1e9);
  check_grid(cfg.scenario.transmission_histogram_detunings_mhz,
             "scenario.transmission_histogram_detunings_mhz", 0.0, 1e9);
  if (cfg.scenario.scattered_grid != "auto") {
    try {
      for (double v : parse_number_list(cfg.scenario.scattered_grid)) {
        if (v <= 0.0) {
          out.push_back("scenario.scattered_grid entries must be > 0");
          break;
        }
      }
    } catch (const std::exception&) {
      out.push_back("scenario.scattered_grid must be 'auto' or a number list");
    }
  }

  if (out.empty()) {
    for (auto& v : make_level_scheme(cfg).invariant_violations()) out.push_back(v);
    for (auto& v : make_cavity(cfg).invariant_violations()) out.push_back(v);
  }
  return out;
}

LevelScheme make_level_scheme(const Config& cfg) {
  return LevelScheme::rb87_d2(mhz_to_angular(cfg.atomic.gamma_mhz),
                              mhz_to_angular(cfg.atomic.hfp_splitting_mhz),
                              mhz_to_angular(cfg.atomic.delta21_mhz),
                              ghz_to_angular(cfg.atomic.ground_splitting_ghz));
}

CavitySystem make_cavity(const Config& cfg) {
  CavitySystem sys;
  sys.g = mhz_to_angular(cfg.cavity.g_mhz);
  sys.kappa = mhz_to_angular(cfg.cavity.kappa_mhz);
  sys.gamma = mhz_to_angular(cfg.atomic.gamma_mhz);
  sys.delta_a = mhz_to_angular(cfg.cavity.delta_a_mhz);
  sys.delta_c = mhz_to_angular(cfg.cavity.delta_c_mhz);
  return sys;
}

DetectionChain make_detection_chain(const Config& cfg) {
  DetectionChain chain;
  if (cfg.detection.cavity_fraction == "auto") {
    const CavitySystem sys = make_cavity(cfg);
    chain.cavity_fraction = purcell_fraction(sys.g, sys.kappa, sys.gamma);
  } else {
    chain.cavity_fraction = std::stod(cfg.detection.cavity_fraction);
  }
  chain.mirror_fraction = cfg.detection.mirror_fraction;
  chain.path_detector_efficiency = cfg.detection.path_detector_efficiency;
  chain.dark_rate = cfg.detection.dark_rate_hz;
  chain.stray_rate = cfg.detection.stray_rate_hz;
  return chain;
}

FluorescenceModel make_fluorescence_model(const Config& cfg) {
  FluorescenceModel m;
  m.scheme = make_level_scheme(cfg);
  m.cavity = make_cavity(cfg);
  m.chain = make_detection_chain(cfg);
  m.cavity_enhanced = true;
  m.cavity_modified_branching = cfg.readout.cavity_modified_branching;
  m.probe_duration = us_to_s(cfg.readout.probe_duration_us);
  m.background_rate = m.chain.background_rate();
  m.prep_error = cfg.readout.prep_error;
  m.saturation = cfg.atomic.saturation;
  return m;
}

TransmissionModel make_transmission_model(const Config& cfg) {
  TransmissionModel m;
  m.cavity = make_cavity(cfg);
  m.target_dark_mean = cfg.scenario.transmission_target_dark;
  m.prep_error = cfg.scenario.transmission_prep_error;
  m.probe_duration = us_to_s(cfg.scenario.transmission_duration_us);
  return m;
}

TrapModel make_trap_model(const Config& cfg) {
  TrapModel t;
  t.depth = cfg.trap.depth_mk * 1e-3;
  t.recoil_energy = cfg.trap.recoil_nk * 1e-9;
  t.geometry = cfg.trap.geometry == "balanced" ? ProbeGeometry::Balanced
                                               : ProbeGeometry::Unidirectional;
  t.survival = cfg.trap.survival_model == "exponential" ? SurvivalModel::Exponential
                                                        : SurvivalModel::HardThreshold;
  return t;
}

}  // namespace readout
