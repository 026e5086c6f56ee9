#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "support.hpp"
#include "ubo/convex_hull.hpp"

using namespace ubo;
using Eigen::Vector3d;

TEST_CASE("regular tetrahedron with edge sqrt(2) has volume 1/3") {
  const std::vector<Vector3d> tetra = {
      {0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  CHECK(convex_hull_volume(tetra) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("degenerate point sets have zero volume") {
  CHECK(convex_hull_volume({}) == 0.0);
  CHECK(convex_hull_volume({{1, 2, 3}}) == 0.0);
  CHECK(convex_hull_volume({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}) == 0.0);
  // Coplanar cloud on a tilted plane; dyadic coordinates keep z = 2a - 3b +
  // 0.25 exactly representable, so the set is exactly degenerate.
  std::vector<Vector3d> plane;
  Rng rng(51);
  for (int i = 0; i < 30; ++i) {
    const double a = static_cast<double>(rng.uniform_index(65)) / 64.0;
    const double b = static_cast<double>(rng.uniform_index(65)) / 64.0;
    plane.emplace_back(a, b, 2.0 * a - 3.0 * b + 0.25);
  }
  CHECK(convex_hull_volume(plane) == 0.0);
  // Collinear cloud.
  std::vector<Vector3d> line;
  for (int i = 0; i < 10; ++i) line.emplace_back(i * 0.1, i * 0.2, i * 0.3);
  CHECK(convex_hull_volume(line) == 0.0);
}

TEST_CASE("unit cube has volume 1, interior points are ignored") {
  std::vector<Vector3d> cube;
  for (int i = 0; i < 8; ++i)
    cube.emplace_back(i & 1 ? 1.0 : 0.0, i & 2 ? 1.0 : 0.0, i & 4 ? 1.0 : 0.0);
  CHECK(convex_hull_volume(cube) == doctest::Approx(1.0).epsilon(1e-12));
  cube.emplace_back(0.5, 0.5, 0.5);
  cube.emplace_back(0.25, 0.5, 0.75);
  cube.emplace_back(1.0, 1.0, 1.0);  // duplicate vertex
  CHECK(convex_hull_volume(cube) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hull volume matches Monte Carlo rejection sampling") {
  Rng rng(52);
  std::vector<Vector3d> points;
  for (int i = 0; i < 50; ++i)
    points.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0));
  const double volume = convex_hull_volume(points);
  const double mc = testsupport::mc_hull_volume(points, 1000000, rng);
  CHECK(std::abs(volume - mc) <= 0.02 * mc);
}

TEST_CASE("hull volume is permutation-invariant and obeys cubic scaling") {
  Rng rng(53);
  std::vector<Vector3d> points;
  for (int i = 0; i < 20; ++i)
    points.emplace_back(rng.uniform(), rng.uniform(), rng.uniform());
  const double volume = convex_hull_volume(points);

  std::vector<Vector3d> shuffled = points;
  for (std::size_t i = shuffled.size() - 1; i > 0; --i)
    std::swap(shuffled[i], shuffled[rng.uniform_index(i + 1)]);
  CHECK(convex_hull_volume(shuffled) ==
        doctest::Approx(volume).epsilon(1e-9));

  std::vector<Vector3d> scaled = points;
  for (Vector3d& p : scaled) p *= 2.0;
  CHECK(convex_hull_volume(scaled) ==
        doctest::Approx(8.0 * volume).epsilon(1e-9));
}

TEST_CASE("near-coplanar stress goes through the exact fallback") {
  // A flat slab 1e-13 thick: the volume is tiny but the hull must not
  // corrupt or crash on the nearly degenerate orientation tests.
  Rng rng(54);
  std::vector<Vector3d> slab;
  for (int i = 0; i < 40; ++i)
    slab.emplace_back(rng.uniform(), rng.uniform(),
                      (rng.uniform() - 0.5) * 1e-13);
  const double volume = convex_hull_volume(slab);
  CHECK(volume >= 0.0);
  CHECK(volume < 1e-12);

  // Exactly coplanar grid plus one apex: a pyramid, volume = area * h / 3.
  std::vector<Vector3d> pyramid;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) pyramid.emplace_back(i / 4.0, j / 4.0, 0.0);
  pyramid.emplace_back(0.5, 0.5, 3.0);
  CHECK(convex_hull_volume(pyramid) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orientation predicate signs") {
  const Vector3d a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
  CHECK(orient3d_sign(a, b, c, {0, 0, 1}) == 1);
  CHECK(orient3d_sign(a, b, c, {0, 0, -1}) == -1);
  CHECK(orient3d_sign(a, b, c, {0.3, 0.4, 0.0}) == 0);
  // Tiny but exactly representable offsets must keep their sign.
  CHECK(orient3d_sign(a, b, c, {0.3, 0.4, 1e-300}) == 1);
  CHECK(orient3d_sign(a, b, c, {0.3, 0.4, -1e-300}) == -1);
}
