#pragma once

#include <utility>
#include <vector>

#include "circon/parallel.hpp"
#include "circon/projection.hpp"

namespace circon {

/// Result of a hull computation. `excluded_witnesses` samples, per excluded
/// cell (linear index in the hull grid), the family member that excluded it.
struct HullResult {
  Grid hull;
  int family_size = 0;
  bool fixed_point = false;
  std::vector<std::pair<std::size_t, int>> excluded_witnesses;
  std::size_t skipped_total = 0;
};

namespace detail {

inline Grid dilated_domain(const Grid& body, double margin_world) {
  int m = static_cast<int>(std::ceil(margin_world / body.spacing())) + 1;
  Vec origin = body.origin();
  CellIndex shape = body.shape();
  for (int a = 0; a < body.dim(); ++a) {
    origin[a] -= m * body.spacing();
    shape[a] += 2 * m;
  }
  return Grid(body.dim(), origin, body.spacing(), shape);
}

/// Core carving loop: a domain cell stays iff every member's image contains
/// the cell's projection (1-cell tolerance). Degenerate projections cannot
/// exclude, matching the skip policy for cells of P^perp(C).
inline HullResult hull_compute(const Grid& body, const std::vector<ProjectionMap>& maps,
                               double margin_world) {
  std::vector<std::optional<ProjectionImage>> slots(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) { slots[i] = project_body(maps[i], body); });
  std::vector<ProjectionImage> images;
  images.reserve(maps.size());
  for (auto& s : slots) images.push_back(std::move(*s));

  HullResult res;
  res.family_size = static_cast<int>(maps.size());
  for (const auto& img : images) res.skipped_total += img.skipped;

  Grid domain = dilated_domain(body, margin_world);
  std::vector<int> excluded_by(domain.size(), -1);

  parallel_for(domain.size(), [&](std::size_t i) {
    Vec x = domain.center(domain.unlinear(i));
    for (std::size_t m = 0; m < maps.size(); ++m) {
      ChartCoords t{};
      if (!maps[m].project(x, t)) continue;
      if (!images[m].contains_chart_point(t, 1)) {
        excluded_by[i] = static_cast<int>(m);
        return;
      }
    }
    excluded_by[i] = -2;  // survives every member
  });

  res.hull = std::move(domain);
  for (std::size_t i = 0; i < res.hull.size(); ++i) {
    if (excluded_by[i] == -2) res.hull.set_linear(i, true);
    else if (res.excluded_witnesses.size() < 2048)
      res.excluded_witnesses.emplace_back(i, excluded_by[i]);
  }
  res.fixed_point = bodies_coincide(res.hull, body);
  return res;
}

} // namespace detail

/// Visual hull with respect to an orthogonal family.
inline HullResult visual_hull(const Grid& body, const ProjectionFamily& fam) {
  if (fam.kind != ProjectionFamily::Kind::AllOrthogonal)
    throw BadParamsError("visual_hull requires an AllOrthogonal family");
  auto maps = enumerate_family(fam);
  double diam = metrics(body).diameter;
  return detail::hull_compute(body, maps, diam);
}

/// C-visual hull with respect to a circular family. For CircularEps families
/// a member losing more than 0.1% of the occupied cells to the degeneracy
/// set invalidates the run (those members are required to clear the body).
inline HullResult c_visual_hull(const Grid& body, const ProjectionFamily& fam) {
  if (fam.kind == ProjectionFamily::Kind::AllOrthogonal)
    throw BadParamsError("c_visual_hull requires a circular family");
  auto maps = enumerate_family(fam);

  if (fam.kind == ProjectionFamily::Kind::CircularEps) {
    std::size_t occ = body.count_occupied();
    for (std::size_t m = 0; m < maps.size(); ++m) {
      ProjectionImage img = project_body(maps[m], body);
      if (static_cast<double>(img.skipped) > 0.001 * static_cast<double>(occ))
        throw DegenerateFiberError(
            "CircularEps member " + std::to_string(m) + " skips " +
            std::to_string(img.skipped) + " cells (P^perp(C) must clear the body)");
    }
  }

  double diam = metrics(body).diameter;
  double margin = 2.0 * diam;
  if (fam.kind == ProjectionFamily::Kind::CircularEps)
    margin = std::max(1.0 / fam.eps, margin);
  return detail::hull_compute(body, maps, margin);
}

/// eps-visual hull: C-visual hull under the family P_{k, body, eps}.
inline HullResult eps_visual_hull(const Grid& body, double eps, int k, int count,
                                  std::uint64_t seed) {
  if (eps <= 0) throw BadParamsError("eps_visual_hull requires eps > 0");
  return c_visual_hull(body, ProjectionFamily::circular_eps(k, body, eps, count, seed));
}

} // namespace circon
