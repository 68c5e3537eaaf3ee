// Writes the worked-example dataset (GTFS feed, weather series, offset grid,
// trip records, run config) into a directory, ready for the CLI.

#include <cstdio>

#include "support/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 1;
  }
  try {
    auto bundle = heatpath::fixtures::write_example_bundle(argv[1]);
    std::printf("wrote example dataset under %s\n", bundle.dir.c_str());
    std::printf("run it with:\n  heatpath run --config %s --out %s/out\n",
                bundle.config_file.c_str(), bundle.dir.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
