#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "tropfw/errors.hpp"
#include "tropfw/projection.hpp"

using namespace tropfw;
using testing::minimax_oracle;
using testing::random_exact_point;
using testing::random_generic_ultrametric;
using testing::random_point;

namespace {

bool leq(const TropicalPoint& a, const TropicalPoint& b, double tol = 0.0) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + tol) return false;
  }
  return true;
}

// A random point of tconv(V): max_i (lambda_i + v_i) with random lambda.
TropicalPoint random_hull_point(std::mt19937_64& gen, const PolytopeVertexSet<double>& v) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<std::optional<double>> out(v.dimension());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lambda = u(gen);
    for (int e = 0; e < v.dimension(); ++e) {
      if (v.is_neg_inf(i, e)) continue;
      const double c = lambda + v.values(i)[e];
      if (!out[e] || *out[e] < c) out[e] = c;
    }
  }
  std::vector<double> x;
  for (const auto& c : out) x.push_back(*c);
  return TropicalPoint(std::move(x));
}

}  // namespace

TEST_CASE("the three routes agree on the K_3 example") {
  const Matroid m = graphic_matroid(3);
  const TropicalPoint x{1, 5, 3};
  const TropicalPoint expected{1, 3, 3};
  CHECK(project_polytope(bergman_vertices<double>(m), x) == expected);
  CHECK(project_bergman(m, x) == expected);
  CHECK(project_bergman(m, x, ProjectionRoute::flats) == expected);
  CHECK(project_ultrametric_fast(3, x) == expected);
}

TEST_CASE("K_3 example against a brute-force search for the largest ultrametric below x") {
  // Half-integer grid: every ultrametric below (1,5,3) on it is dominated by the answer.
  const Matroid m = graphic_matroid(3);
  const TropicalPoint x{1, 5, 3};
  std::optional<TropicalPoint> largest;
  for (int a = -4; a <= 2; ++a) {
    for (int b = -4; b <= 10; ++b) {
      for (int c = -4; c <= 6; ++c) {
        const TropicalPoint w{a / 2.0, b / 2.0, c / 2.0};
        if (!leq(w, x) || !is_m_ultrametric(m, w)) continue;
        if (!largest || leq(*largest, w)) largest = w;
        CHECK(leq(w, project_bergman(m, x)));
      }
    }
  }
  REQUIRE(largest.has_value());
  CHECK(*largest == TropicalPoint{1, 3, 3});
}

TEST_CASE("projection onto a tropical polytope is a nearest point") {
  std::mt19937_64 gen(31);
  for (int p : {3, 4}) {
    const auto v = bergman_vertices<double>(graphic_matroid(p));
    const int q = v.dimension();
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_point(gen, q);
      const auto px = project_polytope(v, x);
      const auto y = random_hull_point(gen, v);
      CHECK(tropical_distance(px, x) <= tropical_distance(y, x) + 1e-12);
      CHECK(torus_equal(project_polytope(v, y), y));
    }
  }
}

TEST_CASE("polytope generated by finite vertices") {
  PolytopeVertexSet<double> v(3);
  v.add({0, 0, 0}, {false, false, false});
  v.add({0, 2, 1}, {false, false, false});
  const TropicalPoint x{5, -1, 3};
  const auto px = project_polytope(v, x);
  // Oracle: dense scan of the tropical segment between the two generators.
  double best = std::numeric_limits<double>::infinity();
  for (int k = -4000; k <= 4000; ++k) {
    const double lambda = k / 1000.0;
    const TropicalPoint y{std::max(0.0, lambda), std::max(0.0, lambda + 2), std::max(0.0, lambda + 1)};
    best = std::min(best, tropical_distance(y, x));
  }
  CHECK(tropical_distance(px, x) == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("degenerate and malformed vertex sets") {
  PolytopeVertexSet<double> v(3);
  v.add({0, 0, 0}, {true, false, false});
  CHECK_THROWS_AS(project_polytope(v, TropicalPoint{1, 2, 3}), DegenerateError);
  CHECK_THROWS_AS(v.add({0, 0, 0}, {true, true, true}), ArgumentError);
  CHECK_THROWS_AS(v.add({0, 0}, {false, false}), DimensionError);
  CHECK_THROWS_AS(project_polytope(v, TropicalPoint{1, 2}), DimensionError);
}

TEST_CASE("fast route equals the flat route exactly, p = 3, 4, 5") {
  std::mt19937_64 gen(32);
  for (int p : {3, 4, 5}) {
    const Matroid m = graphic_matroid(p);
    for (int t = 0; t < 200; ++t) {
      const auto x = random_exact_point(gen, p * (p - 1) / 2);
      CHECK(project_ultrametric_fast(p, x) == project_bergman(m, x, ProjectionRoute::flats));
    }
  }
}

TEST_CASE("fast route matches a minimax-path oracle, p up to 8") {
  std::mt19937_64 gen(33);
  for (int p = 3; p <= 8; ++p) {
    for (int t = 0; t < 100; ++t) {
      const auto x = testing::random_integer_point(gen, p * (p - 1) / 2, 5);
      CHECK(project_ultrametric_fast(p, x).coords() == minimax_oracle(p, x.coords()));
    }
  }
}

TEST_CASE("fixed points, idempotence, subdominance, translation") {
  std::mt19937_64 gen(34);
  for (int p : {3, 4, 5}) {
    const Matroid m = graphic_matroid(p);
    const int q = m.ground_size();
    for (int t = 0; t < 200; ++t) {
      const auto x = random_point(gen, q);
      const auto px = project_bergman(m, x);
      CHECK(is_m_ultrametric(m, px));
      CHECK(leq(px, x));
      CHECK(project_bergman(m, px) == px);
      CHECK(is_m_ultrametric(m, x) == torus_equal(px, x));
      const auto shifted = project_bergman(m, translate(x, 3.25));
      for (int e = 0; e < q; ++e) CHECK(shifted[e] == doctest::Approx(px[e] + 3.25).epsilon(1e-14));

      // Ultrametrics below x: project random points below x.
      for (int k = 0; k < 5; ++k) {
        std::vector<double> y(x.coords());
        std::uniform_real_distribution<double> drop(0.0, 4.0);
        for (double& c : y) c -= drop(gen);
        const auto w = project_bergman(m, TropicalPoint(y));
        CHECK(leq(w, px));
      }
      const auto u = random_generic_ultrametric(gen, p);
      CHECK(project_bergman(m, u) == u);
    }
  }
}

TEST_CASE("projection is non-expansive") {
  std::mt19937_64 gen(35);
  std::vector<Matroid> matroids{graphic_matroid(3), graphic_matroid(4), graphic_matroid(5), uniform_matroid(2, 3),
                                uniform_matroid(2, 4), uniform_matroid(3, 5)};
  for (const Matroid& m : matroids) {
    for (int t = 0; t < 2000; ++t) {
      const auto x = random_point(gen, m.ground_size());
      const auto y = random_point(gen, m.ground_size());
      CHECK(check_nonexpansive(m, x, y));
    }
    for (int t = 0; t < 100; ++t) {
      const auto x = random_exact_point(gen, m.ground_size());
      const auto y = random_exact_point(gen, m.ground_size());
      CHECK(check_nonexpansive(m, x, y));
    }
  }
  const Matroid m = graphic_matroid(4);
  const TropicalPoint x{1, 2, 3, 4, 5, 6};
  CHECK(check_nonexpansive(m, x, x));
  for (int t = 0; t < 200; ++t) {
    const auto u = random_generic_ultrametric(gen, 4);
    const auto y = random_point(gen, 6);
    const auto py = project_bergman(m, y);
    CHECK(tropical_distance(project_bergman(m, u), py) == doctest::Approx(tropical_distance(u, py)));
    CHECK(tropical_distance(u, py) <= tropical_distance(u, y) + 1e-12);
  }
}

TEST_CASE("general matroids use the flat route") {
  const Matroid u = uniform_matroid(2, 4);
  const TropicalPoint x{4, 1, 2, 3};
  const auto px = project_bergman(u, x);
  // On U_{2,4} every 3-subset attains its maximum twice, so the three
  // largest coordinates coincide.
  CHECK(px == TropicalPoint{2, 1, 2, 2});
  CHECK_THROWS_AS(project_bergman(u, x, ProjectionRoute::minimax), ArgumentError);
}

TEST_CASE("safety radius one half") {
  std::mt19937_64 gen(36);
  for (int p : {4, 5}) {
    const Matroid m = graphic_matroid(p);
    const int q = m.ground_size();
    for (int t = 0; t < 300; ++t) {
      const auto w = random_generic_ultrametric(gen, p);
      const double radius = 0.499 * w_min(m, w);
      std::uniform_real_distribution<double> u(-radius, radius);
      std::vector<double> x(w.coords());
      for (double& c : x) c += u(gen);
      CHECK(cone_signature(m, project_bergman(m, TropicalPoint(x))) == cone_signature(m, w));
    }
  }
}

TEST_CASE("parallel batch projection equals the serial one") {
  std::mt19937_64 gen(37);
  for (const Matroid& m : {graphic_matroid(6), uniform_matroid(2, 5)}) {
    std::vector<TropicalPoint> xs;
    for (int t = 0; t < 500; ++t) xs.push_back(random_point(gen, m.ground_size()));
    const auto serial = project_many_serial(m, xs);
    CHECK(project_many_parallel(m, xs, 4) == serial);
    CHECK(project_many_parallel(m, xs, 1) == serial);
  }
}
