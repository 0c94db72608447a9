#include <benchmark/benchmark.h>

// The distro's benchmark_main archive is built with a different LTO version,
// so the entry point lives here.
BENCHMARK_MAIN();
