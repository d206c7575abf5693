// Times the parallel functionals against their serial reference twins on a
// large uniform grid and verifies that both produce identical values.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <limits>
#include <vector>

#include "CLI11.hpp"

#include "perimin/functional.hpp"
#include "perimin/space.hpp"

namespace {

using namespace perimin;

template <class F>
double best_of(int reps, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
  }
  return best;
}

void print_row(const std::string& name, double serial, double parallel, bool match) {
  std::cout << std::left << std::setw(18) << name << std::right << std::fixed
            << std::setprecision(4) << std::setw(10) << serial << " s" << std::setw(10)
            << parallel << " s" << std::setw(8) << std::setprecision(2)
            << (parallel > 0 ? serial / parallel : 0.0) << "x   "
            << (match ? "ok" : "MISMATCH") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  u32 side = 1536;
  int reps = 5;
  u64 seed = 1;
  CLI::App app{"compare the parallel kernels with the serial reference"};
  app.add_option("--side", side, "grid side length in cells");
  app.add_option("--reps", reps, "repetitions per kernel (best time wins)");
  app.add_option("--seed", seed, "random seed for the test data");
  CLI11_PARSE(app, argc, argv);

  GridSpec spec;
  spec.cols = side;
  spec.rows = side;
  Space s = build_grid(spec, i64{1} << 16);
  std::cout << "grid " << side << " x " << side << ": " << s.n << " vertices, "
            << s.edge_count() << " edges\n";

  Rng rng(seed);
  VertexSet a(s.n);
  for (u32 v = 0; v < s.n; ++v) {
    if (rng.next() & 1) a.insert(v);
  }
  std::vector<i64> f(s.n);
  for (i64& v : f) v = static_cast<i64>(rng.below(2048)) - 1024;

  i64 per_serial = 0, per_parallel = 0;
  double t_ser = best_of(reps, [&] { per_serial = reference::perimeter(s, a); });
  double t_par = best_of(reps, [&] { per_parallel = perimeter(s, a); });
  std::cout << std::left << std::setw(18) << "kernel" << std::right << std::setw(12) << "serial"
            << std::setw(12) << "parallel" << std::setw(9) << "speedup"
            << "   check\n";
  print_row("perimeter", t_ser, t_par, per_serial == per_parallel);

  i64 tv_serial = 0, tv_parallel = 0;
  t_ser = best_of(reps, [&] { tv_serial = reference::total_variation(s, f); });
  t_par = best_of(reps, [&] { tv_parallel = total_variation(s, f); });
  print_row("total variation", t_ser, t_par, tv_serial == tv_parallel);

  bool ok = per_serial == per_parallel && tv_serial == tv_parallel;
  return ok ? 0 : 1;
}
