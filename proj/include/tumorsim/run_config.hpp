#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tumorsim/forcing.hpp"
#include "tumorsim/params.hpp"
#include "tumorsim/timestepper.hpp"

namespace tumorsim {

/// One Fourier coefficient ĝ(k) = re + i·im, k ≥ 0.
struct ModeSpec {
  int k = 0;
  double re = 0.0;
  double im = 0.0;
};

struct InitialSpec {
  enum class Preset { Coefficients, SingleMode, RandomSmall };
  Preset preset = Preset::SingleMode;
  std::vector<ModeSpec> modes;   // coefficients
  int mode = 1;                  // single-mode: amplitude·cos(mode x)
  double amplitude = 0.05;
  std::optional<std::uint64_t> seed;  // random-small
  double target_a1 = 0.05;            // target ‖g‖_{Ȧ¹}
  int max_mode = 8;
};

struct ProfileSpec {
  enum class Kind { ExpSine, Table };
  Kind kind = Kind::ExpSine;
  double amplitude = 1.0;
  std::string table;        // CSV path, relative to the config file
  double tail_rate = 1.0;
  std::vector<ModeSpec> modulation;  // empty: depth only
};

struct RunConfig {
  ForcingMode mode = ForcingMode::Particular;
  int mode_cutoff = -1;  // -1: K_max
  ModelParams params;
  std::optional<DimensionalInputs> dimensional;
  InitialSpec initial;
  ProfileSpec s_profile;
  ProfileSpec b_profile;
  int grid_size = 64;
  StepperConfig stepper;
  bool dt_explicit = false;
  std::string output_dir = "out";
  int snapshot_every = 0;  // 0: first and last state only
  std::filesystem::path base_dir = ".";  // resolves relative table paths
};

/// Parses the sectioned key = value format documented in the README.
/// Each override is ("section.key", value) and replaces or adds that key
/// before validation. Throws ConfigError naming the key (with its line for
/// unknown keys).
RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Canonical text form; parse_config(serialize(c)) serializes identically.
std::string serialize(const RunConfig& cfg);

/// Initial interface on cfg.grid_size points. Deterministic for a given seed.
SpectralField build_initial(const RunConfig& cfg);
ProfileData build_profiles(const RunConfig& cfg);
DepthProfile build_profile(const ProfileSpec& spec, const std::filesystem::path& base_dir);

}  // namespace tumorsim
