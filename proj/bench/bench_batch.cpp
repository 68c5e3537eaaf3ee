// Times the trip batch kernel: serial reference loop vs the OpenMP
// parallel-for, on a synthetic grid network with a few thousand records.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "heatpath/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace heatpath;
namespace fs = std::filesystem;

namespace {

double time_run(const char* label,
                const std::function<std::vector<TripOutcome>()>& fn,
                const std::vector<TripOutcome>* reference) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<TripOutcome> out = fn();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();
  long flagged = 0;
  for (const auto& o : out)
    if (o.heat.r_hi) ++flagged;
  bool matches = true;
  if (reference) {
    matches = reference->size() == out.size();
    for (std::size_t i = 0; matches && i < out.size(); ++i)
      matches = (*reference)[i].heat.e_hi == out[i].heat.e_hi &&
                (*reference)[i].status == out[i].status;
  }
  std::printf("%-14s %8.3f s   flagged %ld%s\n", label, s, flagged,
              matches ? "" : "   MISMATCH vs serial");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  int n_trips = argc > 1 ? std::atoi(argv[1]) : 2000;
  fs::path dir = fs::temp_directory_path() / "hp_bench";
  fs::remove_all(dir);
  std::printf("generating %d records...\n", n_trips);
  fixtures::BenchBundle bundle =
      fixtures::write_bench_bundle(dir.string(), n_trips);

  RunContext ctx = load_context(bundle.config, {true, true, false, false});
  std::vector<ParsedRecord> records =
      load_trip_records(bundle.config.trips_path);

  std::vector<TripOutcome> reference;
  double serial = time_run(
      "serial",
      [&] {
        reference = process_records_serial(ctx, records);
        return reference;
      },
      nullptr);

#ifdef _OPENMP
  int max_workers = omp_get_max_threads();
#else
  int max_workers = 1;
#endif
  // Exercise the parallel kernel at least once even on one core.
  for (int workers = 2; workers <= std::max(2, max_workers); workers *= 2) {
    char label[32];
    std::snprintf(label, sizeof label, "omp x%d", workers);
    double t = time_run(
        label, [&] { return process_records(ctx, records, workers); },
        &reference);
    std::printf("%-14s speedup %.2fx\n", "", serial / t);
  }
  return 0;
}
