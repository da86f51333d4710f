// Serial reference against the OpenMP path for the kernels that have both.
#include <chrono>
#include <cstdio>
#include <functional>

#include "opmc/builders.hpp"
#include "opmc/mc_space.hpp"
#include "opmc/random_instance.hpp"
#include "opmc/twisting.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace opmc;

namespace {

double seconds(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, const std::function<void(Exec)>& f) {
  double s = seconds([&] { f(Exec::serial); });
  double p = seconds([&] { f(Exec::parallel); });
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  ratio %5.2f\n", name, s, p, p > 0 ? s / p : 0.0);
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);

  Ring R(RingSpec{RingKind::integers_mod, 2});
  auto hc = barratt_eccles(R, 2, 3, 3);
  InstanceRandom rng(2024);
  GradedModule V(R, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 1}, {"u", -1, 2}, {"t", 0, 2}, {"s", 1, 3}});
  CofreeCoalgebra F(hc.C, V, 3);
  Coderivation Q = rng.two_step(F, {0, 0, 0, 1, 1, 1}, 0.5);
  std::printf("cofree basis: %zu classes\n", F.basis().size());

  row("square_check", [&](Exec e) { square_check(F, Q, e); });
  row("mc_enumerate", [&](Exec e) { mc_enumerate(F, hc.H, Q, e); });
  Element v;
  v.add(R, 0, R.one());
  row("twist", [&](Exec e) { twist(F, hc.H, Q, v, e); });
  McSpace S(F, Q, 3);
  row("kan_spot_check (24 trials)", [&](Exec e) { S.kan_spot_check(24, 9, 3, e); });
  return 0;
}
