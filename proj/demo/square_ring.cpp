// The square ring [0,3]^2 minus (1,2)^2: exact measure, Crofton estimates, and a finite sample.

#include <cstdio>
#include <vector>

#include "tame/crofton.hpp"
#include "tame/dsl.hpp"
#include "tame/measure.hpp"
#include "tame/sampler.hpp"

int main() {
  using namespace tame;
  const auto ring = dsl::evaluate(dsl::parse("[0,3],[0,3] \\ (1,2),(1,2)"));

  const auto m = measure(ring);
  std::printf("mu(ring) = %s\n", to_string(m.mu).c_str());
  std::printf("chi = %g, perimeter/2 = %g, area = %g\n", m.mu[0].value(), m.mu[1].value(), m.mu[2].value());

  CroftonOptions opts;
  opts.threads = 4;
  const auto area = estimate_volume(ring, 200'000, 1, opts.threads);
  const auto half_perimeter = estimate_codim1(ring, 200'000, 2, opts);
  std::printf("crofton area ~ %.4f +- %.4f\n", area.estimate, area.std_error);
  std::printf("crofton mu_1 ~ %.4f +- %.4f\n", half_perimeter.estimate, half_perimeter.std_error);

  // Scale the ring into the unit square so the sample family lives in U.
  const auto small = dsl::evaluate(dsl::parse("scale([0,3],[0,3] \\ (1,2),(1,2), 0.25)"));
  const std::vector<BoxComplex> family{small};
  const auto s = build_sample(family, {}, 10);
  std::printf("N = %llu, |lambda| = %zu, count in ring = %llu, mu at N = %.4f\n",
              static_cast<unsigned long long>(s.N), s.points.size(),
              static_cast<unsigned long long>(s.per_set[0].count), s.per_set[0].mu_at_N);
}
