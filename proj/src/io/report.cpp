#include "qtherm/io/report.hpp"

namespace qtherm {

using nlohmann::json;

json to_json(const PauliHamiltonian& h) {
  json rows = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back(h.c[i][j]);
    rows.push_back(row);
  }
  return json{{"pauli", rows}};
}

json to_json(const RegionReport& report) {
  json intervals = json::array();
  for (const Interval& iv : report.intervals)
    intervals.push_back(json{{"t_lo", iv.t_lo}, {"t_hi", iv.t_hi}});
  return json{{"intervals", intervals},
              {"includes_zero", report.includes_zero},
              {"t_max_scanned", report.t_max_scanned},
              {"options",
               {{"t_points", report.opts.t_points},
                {"refine_tol", report.opts.refine_tol},
                {"neg_tol", report.opts.neg_tol},
                {"conc_tol", report.opts.conc_tol}}}};
}

json to_json(const CampaignResult& result) {
  json exemplars = json::array();
  for (const Exemplar& e : result.exemplars)
    exemplars.push_back(json{{"seed", e.seed}, {"h", e.h}});
  return json{{"samples", result.samples},
              {"positives", result.positives},
              {"fraction", result.fraction},
              {"wilson95", {result.wilson95.first, result.wilson95.second}},
              {"master_seed", result.master_seed},
              {"grids",
               {{"h_min", result.grids.h_grid.h_min},
                {"h_max", result.grids.h_grid.h_max},
                {"h_points", result.grids.h_grid.points},
                {"t_points", result.grids.region_opts.t_points},
                {"refine_tol", result.grids.region_opts.refine_tol},
                {"neg_tol", result.grids.region_opts.neg_tol},
                {"conc_tol", result.grids.region_opts.conc_tol}}},
              {"exemplars", exemplars}};
}

json to_json(const SepgroundResult& result) {
  json out = to_json(result.stats);
  json found = json::array();
  for (const FoundHamiltonian& f : result.found) {
    json entry = to_json(f.h);
    entry["seed"] = f.seed;
    found.push_back(entry);
  }
  out["found"] = found;
  return out;
}

std::string render_report(const std::string& command, const json& payload,
                          double timing_seconds, std::optional<std::uint64_t> master_seed) {
  json env;
  env["tool"] = kToolName;
  env["version"] = kToolVersion;
  env["command"] = command;
  if (master_seed) env["master_seed"] = *master_seed;
  env["payload"] = payload;
  env["timing_seconds"] = timing_seconds;
  return env.dump(2) + "\n";
}

}  // namespace qtherm
