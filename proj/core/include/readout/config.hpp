#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "readout/model.hpp"
#include "readout/scans.hpp"
#include "readout/trap.hpp"

namespace readout {

struct ConfigParseError : std::runtime_error {
  ConfigParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
  int line;
};

// One flat configuration file drives every scenario.  Sections mirror the
// physics layers; all rates are entered as frequency/2pi (MHz unless the key
// says otherwise) and converted to angular units when models are built.
struct Config {
  struct Atomic {
    double gamma_mhz = 3.0;
    double ground_splitting_ghz = 6.834682611;
    double hfp_splitting_mhz = 267.0;  // F'=3 - F'=2
    double delta21_mhz = 157.0;        // F'=2 - F'=1
    double saturation = 0.1;
  } atomic;

  struct Cavity {
    double g_mhz = 3.0;
    double kappa_mhz = 2.8;
    double delta_a_mhz = 0.0;
    double delta_c_mhz = 0.0;
    std::string g_averaging = "none";  // none | standing_wave
  } cavity;

  struct Detection {
    std::string cavity_fraction = "auto";  // "auto" -> Purcell fraction from the cavity
    double mirror_fraction = 0.90;
    double path_detector_efficiency = 0.40;
    double dark_rate_hz = 25.0;
    double stray_rate_hz = 25.0;
  } detection;

  struct Readout {
    double probe_duration_us = 85.0;
    double target_mean_bright = 8.0;  // detected photons per interval
    double prep_error = 1e-3;
    double broadening_q = 0.5;  // Mandel Q the rate spread is calibrated to; 0 disables
    double dark_state_rate_hz = 0.0;
    bool cavity_modified_branching = true;
  } readout;

  struct Trap {
    double depth_mk = 2.0;
    double recoil_nk = 181.0;
    std::string geometry = "unidirectional";  // unidirectional | balanced
    std::string survival_model = "hard";      // hard | exponential
  } trap;

  struct Scenario {
    std::uint64_t shots = 100000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    double tv_tolerance = 0.02;
    std::string fluorescence_grid_mhz = "0,10,20,30,40,50,60,70,80,90,100";
    double fluorescence_scan_prep_error = 0.0;
    std::string transmission_grid_mhz = "0,5,10,15,20,25,30,35,40";
    double transmission_duration_us = 300.0;
    double transmission_target_dark = 80.0;
    double transmission_prep_error = 1e-3;
    std::string transmission_histogram_detunings_mhz = "0,20";
    double fig1_eta_cavity = 0.20;
    double fig1_eta_na = 0.006;
    std::string scattered_grid = "auto";  // "auto" or comma-separated photon numbers
  } scenario;

  static Config defaults() { return {}; }
};

// Parses INI-style text: [section] headers, key = value pairs, '#'/';'
// comments.  Unknown sections or keys and malformed values throw
// ConfigParseError with the offending line number.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);  // throws ConfigParseError / IoError

// Serialization of every key as "section.key = value" lines, in a fixed
// order; parse_config(dump_config(c)) reproduces c.
std::string dump_config(const Config& cfg);

// All invariant violations, each prefixed with the config key path.
std::vector<std::string> validate(const Config& cfg);

LevelScheme make_level_scheme(const Config& cfg);
CavitySystem make_cavity(const Config& cfg);
DetectionChain make_detection_chain(const Config& cfg);
FluorescenceModel make_fluorescence_model(const Config& cfg);
TransmissionModel make_transmission_model(const Config& cfg);
TrapModel make_trap_model(const Config& cfg);

// Comma-separated number list.
std::vector<double> parse_number_list(const std::string& text);

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace readout
