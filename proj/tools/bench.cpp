// Compares the serial reference path of each suite against the OpenMP path
// and confirms the reports are identical.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "varlp/exponents.hpp"
#include "varlp/suites.hpp"

namespace {

using varlp::ExecMode;
using varlp::SuiteReport;

double run_ms(const std::function<SuiteReport(ExecMode)>& fn, ExecMode mode,
              std::string* digest) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport report = fn(mode);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  *digest = report.to_json(false).dump();
  return ms;
}

void bench(const char* name, const std::function<SuiteReport(ExecMode)>& fn) {
  std::string serial_digest, parallel_digest;
  double serial_ms = run_ms(fn, ExecMode::Serial, &serial_digest);
  double parallel_ms = run_ms(fn, ExecMode::Parallel, &parallel_digest);
  bool match = serial_digest == parallel_digest;
  std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   reports %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              match ? "match" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const std::int64_t clarkson_trials = quick ? 2000 : 40000;
  const std::int64_t ops = quick ? 40 : 400;
  const std::int64_t dichotomy_trials = quick ? 200 : 4000;

#ifdef _OPENMP
  std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel mode falls back to serial\n");
#endif

  varlp::ExponentSequence below = varlp::ExponentSequence::periodic({1.3, 1.7, 1.1});
  varlp::ExponentSequence above = varlp::ExponentSequence::periodic({3.0, 7.5, 12.0});

  bench("clarkson (below two)", [&](ExecMode mode) {
    return varlp::suite_clarkson(below, clarkson_trials, 2024, mode);
  });
  bench("clarkson (above two)", [&](ExecMode mode) {
    return varlp::suite_clarkson(above, clarkson_trials, 2024, mode);
  });
  bench("orthogonality", [&](ExecMode mode) {
    return varlp::suite_orthogonality(above, ops, 7, mode);
  });
  bench("structure theorem", [&](ExecMode mode) {
    return varlp::suite_structure_theorem(below, ops, 7, mode);
  });
  bench("shift dichotomy", [&](ExecMode mode) {
    return varlp::suite_shift_dichotomy(dichotomy_trials, 7, mode);
  });
  return 0;
}
