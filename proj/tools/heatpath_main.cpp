#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "heatpath/errors.hpp"
#include "heatpath/pipeline.hpp"

namespace {

struct CliOverrides {
  std::string config;
  std::string gtfs, trips, weather, grid, workrest, frostbite, catalog, out;
  int workers = -1;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config, "flat key=value config file");
  cmd->add_option("--gtfs", o.gtfs, "GTFS directory");
  cmd->add_option("--trips", o.trips, "trip records CSV");
  cmd->add_option("--weather", o.weather, "hourly weather series CSV");
  cmd->add_option("--grid", o.grid, "LST / offset grid (ESRI ASCII)");
  cmd->add_option("--workrest", o.workrest, "work/rest table CSV");
  cmd->add_option("--frostbite", o.frostbite, "frostbite table CSV");
  cmd->add_option("--catalog", o.catalog, "MET catalog CSV");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--workers", o.workers, "parallel workers (0 = all cores)");
}

heatpath::RunConfig build_config(const CliOverrides& o) {
  heatpath::RunConfig cfg;
  if (!o.config.empty()) cfg = heatpath::load_config(o.config);
  if (!o.gtfs.empty()) cfg.gtfs_path = o.gtfs;
  if (!o.trips.empty()) cfg.trips_path = o.trips;
  if (!o.weather.empty()) cfg.weather_path = o.weather;
  if (!o.grid.empty()) cfg.grid_path = o.grid;
  if (!o.workrest.empty()) cfg.workrest_path = o.workrest;
  if (!o.frostbite.empty()) cfg.frostbite_path = o.frostbite;
  if (!o.catalog.empty()) cfg.catalog_path = o.catalog;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (o.workers >= 0) cfg.workers = o.workers;
  return cfg;
}

int run_stages(const CliOverrides& o, const heatpath::Stages& stages) {
  heatpath::RunConfig cfg = build_config(o);
  long errors = heatpath::run(cfg, stages);
  if (errors > 0)
    std::cerr << errors << " record(s) failed; see per-trip output\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transit extreme-temperature exposure pipeline"};
  app.require_subcommand(1);

  CliOverrides o;
  std::string per_trip_path;

  CLI::App* route = app.add_subcommand("route", "plan and trace trips");
  CLI::App* expose =
      app.add_subcommand("expose", "route and simulate heat/chill exposure");
  CLI::App* score =
      app.add_subcommand("score", "expose plus asset resilience scores");
  CLI::App* compare =
      app.add_subcommand("compare", "expose plus baseline-method comparison");
  CLI::App* full = app.add_subcommand("run", "all stages plus manifest");
  for (CLI::App* cmd : {route, expose, score, compare, full})
    add_common_flags(cmd, o);

  CLI::App* summarize =
      app.add_subcommand("summarize", "weighted summary of a per-trip CSV");
  summarize->add_option("per_trip", per_trip_path, "per_trip.csv path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (route->parsed()) return run_stages(o, {true, false, false, false});
    if (expose->parsed()) return run_stages(o, {true, true, false, false});
    if (score->parsed()) return run_stages(o, {true, true, true, false});
    if (compare->parsed()) return run_stages(o, {true, true, false, true});
    if (full->parsed()) {
      heatpath::RunConfig cfg = build_config(o);
      long errors = heatpath::run(cfg, {true, true, true, true});
      std::cout << heatpath::format_summary(
          heatpath::summarize_per_trip_csv(cfg.out_dir + "/per_trip.csv"));
      if (errors > 0)
        std::cerr << errors << " record(s) failed; see per_trip.csv\n";
      return 0;
    }
    if (summarize->parsed()) {
      std::cout << heatpath::format_summary(
          heatpath::summarize_per_trip_csv(per_trip_path));
      return 0;
    }
  } catch (const heatpath::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
