#include "tumorsim/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;
using Document = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"mode", "mode_cutoff"}},
      {"params",
       {"eps", "eta", "theta", "rho", "tau", "n", "n1", "n2", "n3", "alpha_ratio", "omega", "m1",
        "m2"}},
      {"dimensional",
       {"D", "D_n", "D_i", "delta", "delta_n", "delta_i", "lambda", "lambda_n", "lambda_i", "gamma",
        "gamma_n", "chi", "mu", "nu", "sigma_tilde", "tau", "L", "H", "sigma_D", "sigma_B",
        "beta_D", "beta_B"}},
      {"initial", {"preset", "modes", "mode", "amplitude", "seed", "target_a1", "max_mode"}},
      {"profiles",
       {"s_kind", "s_amplitude", "s_table", "s_tail_rate", "s_modulation", "b_kind", "b_amplitude",
        "b_table", "b_tail_rate", "b_modulation"}},
      {"grid", {"size"}},
      {"stepper", {"scheme", "dt", "t_end", "cfl_safety"}},
      {"output", {"dir", "snapshot_every"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const std::string& key, int line) {
  return line > 0 ? key + " (line " + std::to_string(line) + ")" : key;
}

void check_key(const std::string& section, const std::string& key, int line) {
  const auto& keys = known_keys();
  const auto it = keys.find(section);
  if (it == keys.end()) {
    throw ConfigError(section, "unknown section [" + section + "]" +
                                   (line > 0 ? " at line " + std::to_string(line) : ""));
  }
  if (!it->second.count(key)) {
    throw ConfigError(section + "." + key, "unknown key '" + key + "' in [" + section + "]" +
                                               (line > 0 ? " at line " + std::to_string(line) : ""));
  }
}

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("", "malformed section header at line " + std::to_string(line));
      section = trim(s.substr(1, s.size() - 2));
      if (!known_keys().count(section)) {
        throw ConfigError(section, "unknown section [" + section + "] at line " + std::to_string(line));
      }
      doc[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "expected 'key = value' at line " + std::to_string(line));
    }
    if (section.empty()) {
      throw ConfigError(trim(s.substr(0, eq)), "key outside any section at line " + std::to_string(line));
    }
    const std::string key = trim(s.substr(0, eq));
    check_key(section, key, line);
    auto& entries = doc[section];
    if (entries.count(key)) {
      throw ConfigError(section + "." + key, "duplicate key '" + key + "' at line " + std::to_string(line));
    }
    entries[key] = {trim(s.substr(eq + 1)), line};
  }
  return doc;
}

class Reader {
 public:
  Reader(const Document& doc, std::string section) : section_(std::move(section)) {
    if (auto it = doc.find(section_); it != doc.end()) entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }
  bool has(const std::string& key) const { return entries_ && entries_->count(key); }

  std::string name(const std::string& key) const { return section_ + "." + key; }

  std::string text(const std::string& key) const {
    if (!has(key)) throw ConfigError(name(key), "missing required key " + name(key));
    return entries_->at(key).value;
  }

  double number(const std::string& key) const {
    const std::string value = text(key);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') {
      throw ConfigError(name(key), where(name(key), line(key)) + ": expected a number, got '" + value + "'");
    }
    return v;
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  long long integer(const std::string& key) const {
    const std::string value = text(key);
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0') {
      throw ConfigError(name(key), where(name(key), line(key)) + ": expected an integer, got '" + value + "'");
    }
    return v;
  }

  int line(const std::string& key) const { return has(key) ? entries_->at(key).line : 0; }

 private:
  std::string section_;
  const Section* entries_ = nullptr;
};

std::vector<ModeSpec> parse_modes(const Reader& r, const std::string& key) {
  std::vector<ModeSpec> modes;
  std::istringstream list(r.text(key));
  std::string item;
  while (std::getline(list, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    ModeSpec m;
    char tail = 0;
    if (std::sscanf(item.c_str(), "%d:%lf:%lf%c", &m.k, &m.re, &m.im, &tail) != 3 || m.k < 0) {
      throw ConfigError(r.name(key), where(r.name(key), r.line(key)) + ": expected k:re:im with k >= 0, got '" + item + "'");
    }
    modes.push_back(m);
  }
  return modes;
}

std::string format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_modes(const std::vector<ModeSpec>& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(modes[i].k) + ":" + format(modes[i].re) + ":" + format(modes[i].im);
  }
  return out;
}

// InvalidInput messages start with the offending field name.
[[noreturn]] void rethrow_as_config(const InvalidInput& e, const std::string& section) {
  const std::string what = e.what();
  const auto colon = what.find(':');
  const std::string field = colon == std::string::npos ? "" : what.substr(0, colon);
  throw ConfigError(field.empty() ? section : section + "." + field, what);
}

ProfileSpec parse_profile(const Reader& r, const std::string& prefix) {
  ProfileSpec spec;
  const std::string kind = r.has(prefix + "_kind") ? r.text(prefix + "_kind") : "exp-sine";
  if (kind == "exp-sine") {
    spec.kind = ProfileSpec::Kind::ExpSine;
    spec.amplitude = r.number(prefix + "_amplitude");
  } else if (kind == "table") {
    spec.kind = ProfileSpec::Kind::Table;
    spec.table = r.text(prefix + "_table");
    spec.tail_rate = r.number(prefix + "_tail_rate");
    if (!(spec.tail_rate > 0.0)) throw ConfigError(r.name(prefix + "_tail_rate"), r.name(prefix + "_tail_rate") + ": must be > 0");
  } else {
    throw ConfigError(r.name(prefix + "_kind"), r.name(prefix + "_kind") + ": expected exp-sine or table");
  }
  if (r.has(prefix + "_modulation")) spec.modulation = parse_modes(r, prefix + "_modulation");
  return spec;
}

void write_profile(std::ostringstream& out, const ProfileSpec& spec, const std::string& prefix) {
  if (spec.kind == ProfileSpec::Kind::ExpSine) {
    out << prefix << "_kind = exp-sine\n" << prefix << "_amplitude = " << format(spec.amplitude) << "\n";
  } else {
    out << prefix << "_kind = table\n"
        << prefix << "_table = " << spec.table << "\n"
        << prefix << "_tail_rate = " << format(spec.tail_rate) << "\n";
  }
  if (!spec.modulation.empty()) out << prefix << "_modulation = " << format_modes(spec.modulation) << "\n";
}

}  // namespace

RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  Document doc = parse_document(text);
  for (const auto& [path, value] : overrides) {
    const auto dot = path.find('.');
    if (dot == std::string::npos) throw ConfigError(path, "override must be section.key, got '" + path + "'");
    const std::string section = path.substr(0, dot), key = path.substr(dot + 1);
    check_key(section, key, 0);
    doc[section][key] = {value, 0};
  }

  RunConfig cfg;

  const Reader model(doc, "model");
  const std::string mode = model.text("mode");
  if (mode == "particular") {
    cfg.mode = ForcingMode::Particular;
  } else if (mode == "general") {
    cfg.mode = ForcingMode::General;
  } else {
    throw ConfigError("model.mode", "model.mode: expected particular or general, got '" + mode + "'");
  }
  if (model.has("mode_cutoff")) cfg.mode_cutoff = static_cast<int>(model.integer("mode_cutoff"));

  const Reader params(doc, "params");
  const Reader dim(doc, "dimensional");
  if (params.present() == dim.present()) {
    throw ConfigError("params", "exactly one of [params] or [dimensional] is required");
  }
  if (params.present()) {
    ModelParams& p = cfg.params;
    p.eps = params.number("eps", p.eps);
    p.eta = params.number("eta");
    p.theta = params.number("theta", p.theta);
    p.rho = params.number("rho", p.rho);
    p.tau = params.number("tau", p.tau);
    if (params.has("n")) {
      if (params.has("n1") || params.has("n2")) throw ConfigError("params.n", "params.n: give either n or n1/n2");
      p.n1 = p.n2 = params.number("n");
    }
    p.n1 = params.number("n1", p.n1);
    p.n2 = params.number("n2", p.n2);
    p.n3 = params.number("n3", p.n3);
    p.alpha_ratio = params.number("alpha_ratio", p.alpha_ratio);
    p.omega = params.number("omega", p.omega);
    p.m1 = params.number("m1", p.m1);
    p.m2 = params.number("m2", p.m2);
    try {
      p.validate();
    } catch (const InvalidInput& e) {
      rethrow_as_config(e, "params");
    }
  } else {
    DimensionalInputs in;
    const auto pick = [&](const char* both, const char* key, double& slot, bool required) {
      if (dim.has(key)) {
        slot = dim.number(key);
      } else if (both && dim.has(both)) {
        slot = dim.number(both);
      } else if (required) {
        throw ConfigError(dim.name(key), "missing required key " + dim.name(key));
      }
    };
    pick("D", "D_n", in.diffusion_n, true);
    pick("D", "D_i", in.diffusion_i, true);
    pick("delta", "delta_n", in.delta_n, false);
    pick("delta", "delta_i", in.delta_i, false);
    pick("lambda", "lambda_n", in.lambda_n, false);
    pick("lambda", "lambda_i", in.lambda_i, false);
    pick("gamma", "gamma_n", in.gamma_n, false);
    pick(nullptr, "chi", in.chi, false);
    pick(nullptr, "mu", in.mu, false);
    pick(nullptr, "nu", in.nu, true);
    pick(nullptr, "sigma_tilde", in.sigma_tilde, true);
    pick(nullptr, "tau", in.tau, false);
    pick(nullptr, "L", in.length, true);
    pick(nullptr, "H", in.height, true);
    const auto optional = [&](const char* key, std::optional<double>& slot) {
      if (dim.has(key)) slot = dim.number(key);
    };
    optional("sigma_D", in.sigma_d);
    optional("sigma_B", in.sigma_b);
    optional("beta_D", in.beta_d);
    optional("beta_B", in.beta_b);
    try {
      cfg.params = nondimensionalize(in);
    } catch (const InvalidInput& e) {
      rethrow_as_config(e, "dimensional");
    }
    cfg.dimensional = in;
  }

  const Reader grid(doc, "grid");
  if (grid.has("size")) cfg.grid_size = static_cast<int>(grid.integer("size"));
  if (cfg.grid_size < 4 || cfg.grid_size % 2 != 0) {
    throw ConfigError("grid.size", "grid.size: must be even and >= 4");
  }
  const int kmax = cfg.grid_size / 2 - 1;
  if (cfg.mode_cutoff < -1 || cfg.mode_cutoff > kmax) {
    throw ConfigError("model.mode_cutoff", "model.mode_cutoff: must lie in [0, K_max]");
  }

  const Reader initial(doc, "initial");
  InitialSpec& init = cfg.initial;
  const std::string preset = initial.has("preset") ? initial.text("preset") : "single-mode";
  if (preset == "coefficients") {
    init.preset = InitialSpec::Preset::Coefficients;
    init.modes = parse_modes(initial, "modes");
    for (const auto& m : init.modes) {
      if (m.k > kmax) throw ConfigError("initial.modes", "initial.modes: mode " + std::to_string(m.k) + " exceeds K_max");
    }
  } else if (preset == "single-mode") {
    init.preset = InitialSpec::Preset::SingleMode;
    if (initial.has("mode")) init.mode = static_cast<int>(initial.integer("mode"));
    init.amplitude = initial.number("amplitude", init.amplitude);
    if (init.mode < 1 || init.mode > kmax) throw ConfigError("initial.mode", "initial.mode: must lie in [1, K_max]");
  } else if (preset == "random-small") {
    init.preset = InitialSpec::Preset::RandomSmall;
    if (!initial.has("seed")) throw ConfigError("initial.seed", "initial.seed: random-small requires an explicit seed");
    const long long seed = initial.integer("seed");
    if (seed < 0) throw ConfigError("initial.seed", "initial.seed: must be >= 0");
    init.seed = static_cast<std::uint64_t>(seed);
    init.target_a1 = initial.number("target_a1", init.target_a1);
    if (initial.has("max_mode")) init.max_mode = static_cast<int>(initial.integer("max_mode"));
    if (!(init.target_a1 >= 0.0)) throw ConfigError("initial.target_a1", "initial.target_a1: must be >= 0");
    if (init.max_mode < 1 || init.max_mode > kmax) {
      throw ConfigError("initial.max_mode", "initial.max_mode: must lie in [1, K_max]");
    }
  } else {
    throw ConfigError("initial.preset", "initial.preset: expected coefficients, single-mode or random-small");
  }

  const Reader profiles(doc, "profiles");
  cfg.s_profile = parse_profile(profiles, "s");
  cfg.b_profile = parse_profile(profiles, "b");
  for (const auto* spec : {&cfg.s_profile, &cfg.b_profile}) {
    for (const auto& m : spec->modulation) {
      if (m.k > kmax) throw ConfigError("profiles", "profiles: modulation mode exceeds K_max");
    }
  }

  if (cfg.mode == ForcingMode::Particular) {
    const ModelParams& p = cfg.params;
    if (cfg.s_profile.kind != ProfileSpec::Kind::ExpSine || !cfg.s_profile.modulation.empty()) {
      throw ConfigError("profiles.s_kind", "profiles.s_kind: particular mode needs a depth-only exp-sine profile");
    }
    if (cfg.b_profile.kind != ProfileSpec::Kind::ExpSine || !cfg.b_profile.modulation.empty()) {
      throw ConfigError("profiles.b_kind", "profiles.b_kind: particular mode needs a depth-only exp-sine profile");
    }
    if (p.n1 != p.n2) throw ConfigError("params.n1", "params.n1: particular mode requires n1 = n2");
    if (p.tau != 1.0) throw ConfigError("params.tau", "params.tau: particular mode requires tau = 1");
    if (p.alpha_ratio != 1.0) {
      throw ConfigError("params.alpha_ratio", "params.alpha_ratio: particular mode requires alpha_ratio = 1");
    }
  }

  const Reader stepper(doc, "stepper");
  StepperConfig& st = cfg.stepper;
  try {
    if (stepper.has("scheme")) st.scheme = parse_scheme(stepper.text("scheme"));
  } catch (const InvalidInput& e) {
    throw ConfigError("stepper.scheme", std::string("stepper.scheme: ") + e.what());
  }
  st.t_end = stepper.number("t_end");
  st.cfl_safety = stepper.number("cfl_safety", 1.0);
  if (!(st.cfl_safety > 0.0 && st.cfl_safety <= 1.0)) {
    throw ConfigError("stepper.cfl_safety", "stepper.cfl_safety: must lie in (0, 1]");
  }
  cfg.dt_explicit = stepper.has("dt");
  st.dt = cfg.dt_explicit ? stepper.number("dt")
                          : StepperConfig::default_dt(cfg.params.eta, cfg.grid_size, st.cfl_safety);
  if (!(st.dt > 0.0) || !std::isfinite(st.dt)) throw ConfigError("stepper.dt", "stepper.dt: must be > 0");
  if (!(st.t_end >= 0.0) || !std::isfinite(st.t_end)) {
    throw ConfigError("stepper.t_end", "stepper.t_end: must be >= 0");
  }

  const Reader output(doc, "output");
  if (output.has("dir")) cfg.output_dir = output.text("dir");
  if (output.has("snapshot_every")) cfg.snapshot_every = static_cast<int>(output.integer("snapshot_every"));
  if (cfg.snapshot_every < 0) throw ConfigError("output.snapshot_every", "output.snapshot_every: must be >= 0");
  return cfg;
}

std::string serialize(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[model]\nmode = " << (cfg.mode == ForcingMode::Particular ? "particular" : "general") << "\n";
  if (cfg.mode_cutoff >= 0) out << "mode_cutoff = " << cfg.mode_cutoff << "\n";
  if (cfg.dimensional) {
    const DimensionalInputs& d = *cfg.dimensional;
    out << "\n[dimensional]\n"
        << "D_n = " << format(d.diffusion_n) << "\nD_i = " << format(d.diffusion_i)
        << "\ndelta_n = " << format(d.delta_n) << "\ndelta_i = " << format(d.delta_i)
        << "\nlambda_n = " << format(d.lambda_n) << "\nlambda_i = " << format(d.lambda_i)
        << "\ngamma_n = " << format(d.gamma_n) << "\nchi = " << format(d.chi)
        << "\nmu = " << format(d.mu) << "\nnu = " << format(d.nu)
        << "\nsigma_tilde = " << format(d.sigma_tilde) << "\ntau = " << format(d.tau)
        << "\nL = " << format(d.length) << "\nH = " << format(d.height) << "\n";
    if (d.sigma_d) out << "sigma_D = " << format(*d.sigma_d) << "\n";
    if (d.sigma_b) out << "sigma_B = " << format(*d.sigma_b) << "\n";
    if (d.beta_d) out << "beta_D = " << format(*d.beta_d) << "\n";
    if (d.beta_b) out << "beta_B = " << format(*d.beta_b) << "\n";
  } else {
    const ModelParams& p = cfg.params;
    out << "\n[params]\n"
        << "eps = " << format(p.eps) << "\neta = " << format(p.eta) << "\ntheta = " << format(p.theta)
        << "\nrho = " << format(p.rho) << "\ntau = " << format(p.tau) << "\nn1 = " << format(p.n1)
        << "\nn2 = " << format(p.n2) << "\nn3 = " << format(p.n3)
        << "\nalpha_ratio = " << format(p.alpha_ratio) << "\nomega = " << format(p.omega)
        << "\nm1 = " << format(p.m1) << "\nm2 = " << format(p.m2) << "\n";
  }

  const InitialSpec& init = cfg.initial;
  out << "\n[initial]\n";
  switch (init.preset) {
    case InitialSpec::Preset::Coefficients:
      out << "preset = coefficients\nmodes = " << format_modes(init.modes) << "\n";
      break;
    case InitialSpec::Preset::SingleMode:
      out << "preset = single-mode\nmode = " << init.mode << "\namplitude = " << format(init.amplitude) << "\n";
      break;
    case InitialSpec::Preset::RandomSmall:
      out << "preset = random-small\nseed = " << init.seed.value_or(0)
          << "\ntarget_a1 = " << format(init.target_a1) << "\nmax_mode = " << init.max_mode << "\n";
      break;
  }

  out << "\n[profiles]\n";
  write_profile(out, cfg.s_profile, "s");
  write_profile(out, cfg.b_profile, "b");

  out << "\n[grid]\nsize = " << cfg.grid_size << "\n";
  out << "\n[stepper]\nscheme = " << scheme_name(cfg.stepper.scheme) << "\n";
  if (cfg.dt_explicit) out << "dt = " << format(cfg.stepper.dt) << "\n";
  out << "t_end = " << format(cfg.stepper.t_end) << "\ncfl_safety = " << format(cfg.stepper.cfl_safety) << "\n";
  out << "\n[output]\ndir = " << cfg.output_dir << "\nsnapshot_every = " << cfg.snapshot_every << "\n";
  return out.str();
}

SpectralField build_initial(const RunConfig& cfg) {
  const int n = cfg.grid_size;
  std::vector<Complex> modes(n / 2);
  const InitialSpec& init = cfg.initial;
  switch (init.preset) {
    case InitialSpec::Preset::Coefficients:
      for (const auto& m : init.modes) modes.at(m.k) = {m.re, m.im};
      break;
    case InitialSpec::Preset::SingleMode:
      modes.at(init.mode) = init.amplitude / 2.0;
      break;
    case InitialSpec::Preset::RandomSmall: {
      std::mt19937_64 rng(init.seed.value());
      const auto uniform = [&rng] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
      double norm = 0.0;
      for (int k = 1; k <= init.max_mode; ++k) {
        const double decay = 1.0 / (static_cast<double>(k) * k);
        const double re = uniform() * decay;
        const double im = uniform() * decay;
        modes[k] = {re, im};
        norm += 2.0 * k * std::abs(modes[k]);
      }
      if (norm > 0.0) {
        for (auto& m : modes) m *= init.target_a1 / norm;
      }
      break;
    }
  }
  return SpectralField::from_modes(n, modes);
}

DepthProfile build_profile(const ProfileSpec& spec, const std::filesystem::path& base_dir) {
  if (spec.kind == ProfileSpec::Kind::ExpSine) return DepthProfile::exp_sine(spec.amplitude);
  std::filesystem::path path = spec.table;
  if (path.is_relative()) path = base_dir / path;
  return DepthProfile::from_csv(path, spec.tail_rate);
}

ProfileData build_profiles(const RunConfig& cfg) {
  const auto modulation = [&](const ProfileSpec& spec) {
    if (spec.modulation.empty()) return SpectralField::constant(cfg.grid_size, 1.0);
    std::vector<Complex> modes(cfg.grid_size / 2);
    for (const auto& m : spec.modulation) modes.at(m.k) = {m.re, m.im};
    return SpectralField::from_modes(cfg.grid_size, modes);
  };
  return ProfileData::modulated(modulation(cfg.s_profile), build_profile(cfg.s_profile, cfg.base_dir),
                                modulation(cfg.b_profile), build_profile(cfg.b_profile, cfg.base_dir));
}

}  // namespace tumorsim
