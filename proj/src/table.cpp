#include "bell/table.hpp"

#include <cmath>
#include <cstdio>

#include "bell/qubit.hpp"
#include "bell/robustness.hpp"

namespace bell {

bool row_uses_degenerate(const std::string& name) { return name == "I4422_4"; }

ReportRow compute_row(const CatalogEntry& e, const TableOptions& opts) {
  const BellFunctional& f = e.functional;
  SeesawOptions so;
  so.restarts = opts.restarts;
  so.seed = opts.seed;
  so.tol = opts.tol;
  so.exec = opts.exec;
  so.allow_degenerate = row_uses_degenerate(e.name);

  ReportRow row;
  row.name = e.name;
  row.degenerate = so.allow_degenerate;

  const QuantumResult q = seesaw_maximize(f, so);
  row.violation = q.value;
  row.theta_max_over_pi = q.theta_max / M_PI;

  if (q.theta_max > 0.0) {
    if (auto r = noise_threshold(f, q.theta_max, so)) row.w_max = r->w_threshold;
  }
  if (auto r = noise_threshold(f, M_PI / 4, so)) row.w = r->w_threshold;

  EtaOptions eo;
  eo.seesaw = so;
  eo.eta_tol = opts.eta_tol;
  if (auto r = eta_threshold_symmetric(f, M_PI / 4, eo)) row.eta = r->eta;
  return row;
}

std::vector<ReportRow> compute_table(const TableOptions& opts) {
  const std::vector<CatalogEntry> entries = catalog_primary();
  std::vector<ReportRow> rows(entries.size());
  const auto n = static_cast<std::int64_t>(entries.size());
  if (opts.exec == Exec::parallel) {
    TableOptions inner = opts;
    inner.exec = Exec::serial;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] = compute_row(entries[static_cast<std::size_t>(i)], inner);
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] = compute_row(entries[static_cast<std::size_t>(i)], opts);
  }
  return rows;
}

namespace {

std::string fixed4(const std::optional<double>& v) {
  if (!v) return "none";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

} // namespace

std::string table_csv(const std::vector<ReportRow>& rows) {
  std::string out = "name,violation,theta_max_over_pi,w_max,w,eta\n";
  for (const auto& r : rows) {
    out += r.name + "," + fixed4(r.violation) + "," + fixed4(r.theta_max_over_pi) + "," + fixed4(r.w_max) + "," +
           fixed4(r.w) + "," + fixed4(r.eta) + "\n";
  }
  return out;
}

std::string table_text(const std::vector<ReportRow>& rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %10s %10s %8s %8s %8s\n", "name", "violation", "theta/pi", "w_max", "w",
                "eta");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %10s %10s %8s %8s %8s%s\n", r.name.c_str(), fixed4(r.violation).c_str(),
                  fixed4(r.theta_max_over_pi).c_str(), fixed4(r.w_max).c_str(), fixed4(r.w).c_str(),
                  fixed4(r.eta).c_str(), r.degenerate ? "  (degenerate measurements)" : "");
    out += buf;
  }
  return out;
}

nlohmann::json table_json(const std::vector<ReportRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"name", r.name},
                   {"violation", r.violation},
                   {"theta_max_over_pi", r.theta_max_over_pi},
                   {"w_max", opt(r.w_max)},
                   {"w", opt(r.w)},
                   {"eta", opt(r.eta)},
                   {"degenerate", r.degenerate}});
  }
  return arr;
}

} // namespace bell
