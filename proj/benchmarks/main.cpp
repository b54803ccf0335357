#include <benchmark/benchmark.h>

// The distro's benchmark_main archive carries LTO bytecode from another GCC
// point release, so the entry point lives here.
BENCHMARK_MAIN();
