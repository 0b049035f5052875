#include <CLI11.hpp>

#include <tat/checker.hpp>
#include <tat/families.hpp>

#include <chrono>
#include <iostream>
#include <vector>

#ifdef TAT_HAVE_OPENMP
#include <omp.h>
#endif

using namespace tat;
using Clock = std::chrono::steady_clock;

namespace {

long long run_pass(const std::vector<RibbonGraph>& work, bool parallel,
                   std::vector<bool>& verdicts) {
  CheckOptions opt;
  opt.parallel = parallel;
  verdicts.clear();
  auto t0 = Clock::now();
  for (const auto& g : work) {
    Verdict v = check_mixed_tat(g, opt);
    Verdict w = check_walk_lemma(g, opt);
    verdicts.push_back(v.holds && w.holds);
  }
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel timing of the tat checker kernels"};
  int graphs = 200, reps = 25;
  app.add_option("--graphs", graphs, "random graphs in the workload");
  app.add_option("--reps", reps, "repetitions of the deep fixtures");
  CLI11_PARSE(app, argc, argv);

  std::vector<RibbonGraph> work;
  for (int r = 0; r < reps; ++r) {
    work.push_back(paired_tori_graph());
    work.push_back(amphidrome_graph());
    work.push_back(fig1_graph(Rat(1, 18)));
  }
  for (int s = 0; s < graphs; ++s) work.push_back(random_graph(s, 12, 2, 24));
  std::cout << "workload: " << work.size() << " graphs ("
            << reps << "x fixtures + " << graphs << " random)\n";

  std::vector<bool> serial_v, parallel_v;
  long long serial_ms = run_pass(work, false, serial_v);
  long long parallel_ms = run_pass(work, true, parallel_v);

  std::cout << "serial:   " << serial_ms << " ms\n";
#ifdef TAT_HAVE_OPENMP
  std::cout << "parallel: " << parallel_ms << " ms (" << omp_get_max_threads()
            << " threads";
#else
  std::cout << "parallel: " << parallel_ms << " ms (OpenMP unavailable";
#endif
  if (parallel_ms > 0)
    std::cout << ", " << (double)serial_ms / (double)parallel_ms << "x";
  std::cout << ")\n";

  if (serial_v != parallel_v) {
    std::cerr << "verdicts differ between serial and parallel passes\n";
    return 1;
  }
  std::cout << "verdicts: identical across passes\n";
  return 0;
}
