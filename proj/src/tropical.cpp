#include "tropfw/tropical.hpp"

namespace tropfw {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::symmetric: return "sym";
    case Metric::min_plus: return "min";
    case Metric::max_plus: return "max";
  }
  return "unknown";
}

Metric parse_metric(std::string_view text) {
  if (text == "sym" || text == "symmetric") return Metric::symmetric;
  if (text == "min" || text == "min_plus") return Metric::min_plus;
  if (text == "max" || text == "max_plus") return Metric::max_plus;
  throw ArgumentError("unknown metric '" + std::string(text) + "' (expected sym, min or max)");
}

ExactPoint to_exact(const TropicalPoint& x) {
  std::vector<Rational> c;
  c.reserve(x.size());
  for (double v : x) c.emplace_back(v);
  return ExactPoint(std::move(c));
}

TropicalPoint to_double_point(const ExactPoint& x) {
  std::vector<double> c;
  c.reserve(x.size());
  for (const Rational& v : x) c.push_back(v.get_d());
  return TropicalPoint(std::move(c));
}

}  // namespace tropfw
