#include "tropfw/projection.hpp"

#include <omp.h>

namespace tropfw {

std::vector<TropicalPoint> project_many_serial(const Matroid& m, const std::vector<TropicalPoint>& xs) {
  std::vector<TropicalPoint> out;
  out.reserve(xs.size());
  for (const TropicalPoint& x : xs) out.push_back(project_bergman(m, x));
  return out;
}

std::vector<TropicalPoint> project_many_parallel(const Matroid& m, const std::vector<TropicalPoint>& xs,
                                                 int threads) {
  // Force the flat cache before the team starts so workers only read it.
  if (!m.complete_graph_order()) (void)m.maximal_proper_flats();
  std::vector<TropicalPoint> out(xs.size());
  const long count = static_cast<long>(xs.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(team) schedule(static)
  for (long i = 0; i < count; ++i) out[i] = project_bergman(m, xs[i]);
  return out;
}

}  // namespace tropfw
