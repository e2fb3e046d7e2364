// Wall-clock comparison of the OpenMP repetition runner against the serial
// reference, and of the iterative solver against the brute-force grid.
//
//   bench_runner [config] [horizon] [repetitions]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "structbandit/config.hpp"
#include "structbandit/experiment.hpp"
#include "structbandit/saddle.hpp"

using namespace structbandit;

namespace {

template <typename F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : STRUCTBANDIT_CONFIG_DIR "/unconstrained_4arm.ini";
  ExperimentConfig cfg = load_config(path);
  cfg.horizon = argc > 2 ? std::atoll(argv[2]) : 2000;
  cfg.repetitions = argc > 3 ? std::atoll(argv[3]) : 16;

  std::printf("config %s, T=%lld, R=%lld, %d OpenMP threads\n", path.c_str(),
              static_cast<long long>(cfg.horizon), static_cast<long long>(cfg.repetitions),
              omp_get_max_threads());

  ExperimentResult par, ser;
  const double tp = seconds([&] { par = run_experiment(cfg); });
  const double ts = seconds([&] { ser = run_experiment_serial(cfg); });
  bool same = par.traces.size() == ser.traces.size();
  for (std::size_t i = 0; same && i < par.traces.size(); ++i)
    same = par.traces[i].regret == ser.traces[i].regret;
  std::printf("runner   parallel %8.3f s   serial %8.3f s   speedup %.2fx   identical %s\n", tp,
              ts, ts / tp, same ? "yes" : "NO");

  const Instance inst = cfg.instance();
  if (inst.arms() <= 4) {
    const double step = inst.arms() <= 3 ? 0.01 : 0.05;
    double bf = 0.0, it = 0.0;
    const double tb = seconds([&] { bf = brute_force_value(inst, 1e-3, step); });
    const double tk = seconds([&] { it = solve_k_learner(inst, 1e-3, 5000).value_lower; });
    std::printf("solver   brute(step %.2f) %8.3f s  D=%.6f   k-learner(5000) %8.3f s  D=%.6f\n",
                step, tb, bf, tk, it);
  }
  return same ? 0 : 1;
}
