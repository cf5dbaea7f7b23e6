// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "misr/rng.hpp"

namespace misr::pointfields {

// Finite simulation window: a disk centered at the origin (the probe user).
struct Region {
  double radius;

  explicit Region(double r);
  double area() const;
};

// Base-station coordinates, struct-of-arrays for the SIMD kernels.
struct PointSet {
  std::vector<double> xs, ys;
  bool sorted = false;  // ascending distance from the origin
  double extent = 0.0;  // radius of the generating region

  std::size_t size() const { return xs.size(); }
  double dist2(std::size_t i) const { return xs[i] * xs[i] + ys[i] * ys[i]; }
};

struct TierSpec {
  double intensity;  // points per unit area
  double power;      // transmit power relative to tier 1
};

enum class DeploymentModel { ppp, hip, square_lattice, triangular_lattice };

struct Deployment {
  DeploymentModel model;
  std::vector<std::pair<PointSet, double>> tiers;  // (points, power)
};

// A worst-case user site: a vertex of the Voronoi tessellation, equidistant
// from the three base stations whose cells meet there.
struct WorstCaseSite {
  double x, y;
  std::array<std::size_t, 3> triple;  // indices into the generating PointSet
  double circumradius;
};

// Homogeneous PPP in the region, returned sorted by distance from the origin.
PointSet sample_ppp(double intensity, const Region& region,
                    rng::SplitMix64& stream);

// Multi-tier model: one PPP of the summed intensity, thinned independently
// into tiers with probability intensity_k / total.
Deployment sample_hip(std::span<const TierSpec> tiers, const Region& region,
                      rng::SplitMix64& stream);

enum class LatticeKind { square, triangular };

// Lattice of the requested point intensity, translated by a uniformly random
// offset inside one fundamental cell.
Deployment sample_lattice(LatticeKind kind, double intensity,
                          const Region& region, rng::SplitMix64& stream);

// All Voronoi vertices whose circumcenter lies within inner_radius of the
// origin. Every returned site has been re-checked against the strict
// empty-circumcircle property; collinear triples are skipped and cocircular
// duplicates deduplicated by coordinate.
std::vector<WorstCaseSite> voronoi_vertices(const PointSet& points,
                                            double inner_radius);

namespace detail {

// Raw sampling cores shared with the Monte Carlo engine. Squared distances
// of a PPP from the origin arrive in ascending order by construction
// (1-D Poisson process of rate intensity*pi in r^2).
void sample_ppp_radii2(double intensity, double radius, rng::SplitMix64& g,
                       std::vector<double>& r2);

// Unsorted coordinate enumeration for lattices (offset already applied).
void lattice_points(LatticeKind kind, double intensity, double radius,
                    double u, double v, std::vector<double>& xs,
                    std::vector<double>& ys);

double lattice_spacing(LatticeKind kind, double intensity);

std::vector<WorstCaseSite> voronoi_vertices_xy(std::span<const double> xs,
                                               std::span<const double> ys,
                                               double extent,
                                               double inner_radius);

}  // namespace detail

}  // namespace misr::pointfields
