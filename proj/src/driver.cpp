#include "tumorsim/driver.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "tumorsim/errors.hpp"
#include "tumorsim/model_rhs.hpp"

namespace tumorsim {
namespace {

const char* kPlotScript = R"PY(#!/usr/bin/env python3
import csv
import glob
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))


def read_csv(path):
    with open(path) as f:
        rows = list(csv.DictReader(f))
    return {k: np.array([float(r[k]) for r in rows]) for k in rows[0]} if rows else {}


diag = read_csv(os.path.join(here, "diagnostics.csv"))
fig, axes = plt.subplots(1, 2, figsize=(11, 4))
if diag:
    ax = axes[0]
    ax.semilogy(diag["t"], diag["a1"], label="|g|_A1")
    ax.semilogy(diag["t"], np.maximum(diag["a1_hom"], 1e-300), label="|g|_A1 (hom)")
    ax.semilogy(diag["t"], np.maximum(diag["a4_hom"], 1e-300), label="|g|_A4 (hom)")
    ax.set_xlabel("t")
    ax.legend()

x = np.linspace(-np.pi, np.pi, 512)
ax = axes[1]
index = os.path.join(here, "snapshots_index.csv")
if os.path.exists(index):
    with open(index) as f:
        entries = list(csv.DictReader(f))
    for entry in entries:
        snap = read_csv(os.path.join(here, entry["file"]))
        k = snap["k"].astype(int)
        c = snap["re"] + 1j * snap["im"]
        g = np.full_like(x, c[0].real)
        for kk, ck in zip(k[1:], c[1:]):
            g += 2.0 * (ck * np.exp(1j * kk * x)).real
        ax.plot(x, g, label="t = %.4g" % float(entry["t"]))
    ax.set_xlabel("x1")
    ax.legend(fontsize="small")

fig.tight_layout()
out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "plot.png")
fig.savefig(out, dpi=120)
)PY";

const char* preset_name(InitialSpec::Preset preset) {
  switch (preset) {
    case InitialSpec::Preset::Coefficients:
      return "coefficients";
    case InitialSpec::Preset::SingleMode:
      return "single-mode";
    case InitialSpec::Preset::RandomSmall:
      return "random-small";
  }
  return "";
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& g) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot write " + path.string());
  std::fprintf(f, "k,re,im\n");
  for (int k = 0; k <= g.max_mode(); ++k) {
    const Complex c = g.coeff(k);
    std::fprintf(f, "%d,%.17g,%.17g\n", k, c.real(), c.imag());
  }
  if (std::fclose(f) != 0) throw std::runtime_error("cannot write " + path.string());
}

RunOutcome execute_run(const RunConfig& cfg, const std::filesystem::path& out_dir,
                       const std::string& config_text) {
  std::filesystem::create_directories(out_dir);

  const SpectralField g0 = build_initial(cfg);
  const RhsConfig rhs_cfg{cfg.mode, cfg.params, build_profiles(cfg), g0};
  const NonlinearRhs rhs = make_nonstiff_rhs(rhs_cfg, cfg.mode_cutoff);

  RunOutcome outcome;
  std::ofstream index(out_dir / "snapshots_index.csv");
  index << "index,step,t,file\n";
  int snapshot_count = 0;
  const auto snapshot = [&](const SimState& s) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06d.csv", snapshot_count);
    write_snapshot(out_dir / name, s.g());
    char line[128];
    std::snprintf(line, sizeof line, "%d,%zu,%.17g,%s\n", snapshot_count, s.step_index(), s.t(), name);
    index << line;
    ++snapshot_count;
  };

  const SimState initial(g0, 0.0);
  std::size_t last_snapshot_step = 0;
  std::vector<Observer> observers{
      [&](const SimState& s) { outcome.records.push_back(record(s)); },
      [&](const SimState& s) {
        const bool first = s.step_index() == 0;
        const bool cadence = cfg.snapshot_every > 0 && s.step_index() % cfg.snapshot_every == 0;
        if (first || cadence) {
          snapshot(s);
          last_snapshot_step = s.step_index();
        }
      },
  };

  std::size_t final_step = 0;
  try {
    const SimState final_state = run(initial, cfg.stepper, cfg.params.eta, rhs, observers);
    final_step = final_state.step_index();
    if (final_step != last_snapshot_step) snapshot(final_state);
    outcome.status = RunOutcome::Status::Completed;
    outcome.steps = final_step;
    outcome.t_final = final_state.t();
    outcome.message = "completed";
  } catch (const BlowUpError& e) {
    outcome.status = RunOutcome::Status::BlowUp;
    outcome.steps = e.step_index();
    outcome.t_final = e.time();
    outcome.message = e.what();
  }
  index.close();

  finalize_balance(outcome.records, cfg.params.eta);
  {
    std::ofstream csv(out_dir / "diagnostics.csv");
    export_csv(csv, outcome.records);
  }

  const ModelParams& p = cfg.params;
  nlohmann::ordered_json manifest;
  manifest["version"] = kVersion;
  manifest["status"] = outcome.status == RunOutcome::Status::Completed ? "completed" : "blow-up";
  manifest["message"] = outcome.message;
  manifest["mode"] = cfg.mode == ForcingMode::Particular ? "particular" : "general";
  manifest["params"] = {{"eps", p.eps},   {"eta", p.eta},   {"theta", p.theta},
                        {"rho", p.rho},   {"tau", p.tau},   {"n1", p.n1},
                        {"n2", p.n2},     {"n3", p.n3},     {"alpha_ratio", p.alpha_ratio},
                        {"omega", p.omega}, {"m1", p.m1},   {"m2", p.m2}};
  manifest["grid_size"] = cfg.grid_size;
  manifest["mode_cutoff"] = cfg.mode_cutoff < 0 ? cfg.grid_size / 2 - 1 : cfg.mode_cutoff;
  manifest["stepper"] = {{"scheme", scheme_name(cfg.stepper.scheme)},
                         {"dt", cfg.stepper.dt},
                         {"t_end", cfg.stepper.t_end},
                         {"cfl_safety", cfg.stepper.cfl_safety}};
  manifest["initial"] = {{"preset", preset_name(cfg.initial.preset)}};
  if (cfg.initial.seed) manifest["initial"]["seed"] = *cfg.initial.seed;
  const auto profile_json = [](const ProfileSpec& s) {
    nlohmann::ordered_json j;
    j["kind"] = s.kind == ProfileSpec::Kind::ExpSine ? "exp-sine" : "table";
    if (s.kind == ProfileSpec::Kind::ExpSine) {
      j["amplitude"] = s.amplitude;
    } else {
      j["table"] = s.table;
      j["tail_rate"] = s.tail_rate;
    }
    j["modulated"] = !s.modulation.empty();
    return j;
  };
  manifest["profiles"] = {{"s", profile_json(cfg.s_profile)}, {"b", profile_json(cfg.b_profile)}};
  manifest["steps"] = outcome.steps;
  manifest["t_final"] = outcome.t_final;
  manifest["snapshots"] = snapshot_count;
  manifest["config"] = serialize(cfg);
  if (!config_text.empty()) manifest["config_source"] = config_text;
  {
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  {
    std::ofstream out(out_dir / "plot.py");
    out << kPlotScript;
  }
  return outcome;
}

}  // namespace tumorsim
