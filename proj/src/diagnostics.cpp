#include "tumorsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "tumorsim/errors.hpp"

namespace tumorsim {

DiagnosticsRecord record(const SimState& state) {
  const SpectralField& g = state.g();
  DiagnosticsRecord r;
  r.t = state.t();
  r.a1 = wiener_norm(g, 1.0, false);
  r.a1_hom = wiener_norm(g, 1.0, true);
  r.a4_hom = wiener_norm(g, 4.0, true);
  r.mean_re = g.coeff(0).real();
  r.mean_im = g.coeff(0).imag();
  r.smallness_margin = 1.0 - 2.0 * r.a1_hom;
  r.dissipation_balance = std::nan("");
  return r;
}

void finalize_balance(std::vector<DiagnosticsRecord>& records, double eta, double c) {
  const std::size_t n = records.size();
  if (n < 2) {
    for (auto& r : records) r.dissipation_balance = std::nan("");
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const double dt = records[hi].t - records[lo].t;
    const double slope = dt > 0.0 ? (records[hi].a1_hom - records[lo].a1_hom) / dt : 0.0;
    records[i].dissipation_balance = slope + c * eta * records[i].a4_hom;
  }
}

MonitorReport dissipation_monitor(const std::vector<DiagnosticsRecord>& records,
                                  const ModelParams& p, double c) {
  if (records.size() < 2) throw InvalidInput("dissipation_monitor: need at least two records");
  std::vector<DiagnosticsRecord> work = records;
  finalize_balance(work, p.eta, c);

  MonitorReport report;
  report.decay_asserted = p.rho == 0.0 && p.theta == 0.0;
  for (std::size_t i = 0; i + 1 < work.size(); ++i) {
    const auto& a = work[i];
    const auto& b = work[i + 1];
    if (report.decay_asserted && a.smallness_margin > 0.0 && b.smallness_margin > 0.0 &&
        b.a1_hom > a.a1_hom * (1.0 + 1e-14) + 1e-300) {
      report.violations.push_back(i + 1);
    }
  }
  for (const auto& r : work) {
    const double ratio = r.dissipation_balance / (std::exp(-p.n2 * r.t) * (r.a1_hom + 1.0));
    report.envelope_ratio.push_back(ratio);
    if (std::isfinite(ratio)) report.max_envelope_ratio = std::max(report.max_envelope_ratio, ratio);
  }
  return report;
}

const std::string& diagnostics_header() {
  static const std::string header =
      "t,a1,a1_hom,a4_hom,mean_re,mean_im,smallness_margin,dissipation_balance";
  return header;
}

void export_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  out << diagnostics_header() << '\n';
  char line[512];
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.a1,
                  r.a1_hom, r.a4_hom, r.mean_re, r.mean_im, r.smallness_margin,
                  r.dissipation_balance);
    out << line;
  }
  if (!out) throw std::runtime_error("diagnostics: write failed");
}

std::vector<DiagnosticsRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != diagnostics_header()) {
    throw InvalidInput("diagnostics: missing or unexpected header");
  }
  std::vector<DiagnosticsRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    DiagnosticsRecord r;
    double* fields[] = {&r.t,       &r.a1,      &r.a1_hom,           &r.a4_hom,
                        &r.mean_re, &r.mean_im, &r.smallness_margin, &r.dissipation_balance};
    std::istringstream row(line);
    std::string cell;
    for (double* field : fields) {
      if (!std::getline(row, cell, ',')) {
        throw InvalidInput("diagnostics: short row at line " + std::to_string(line_no));
      }
      *field = std::strtod(cell.c_str(), nullptr);
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace tumorsim
