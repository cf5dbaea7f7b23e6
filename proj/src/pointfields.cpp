// SPDX-License-Identifier: Apache-2.0

#include "misr/pointfields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>
#include <utility>

#include "misr/errors.hpp"

namespace misr::pointfields {

namespace {
constexpr double kPi = std::numbers::pi;
}

Region::Region(double r) : radius(r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw invalid_parameter("region radius must be positive and finite");
}

double Region::area() const { return kPi * radius * radius; }

namespace detail {

void sample_ppp_radii2(double intensity, double radius, rng::SplitMix64& g,
                       std::vector<double>& r2) {
  if (!(intensity > 0.0)) throw invalid_parameter("intensity must be positive");
  if (!(radius > 0.0)) throw invalid_parameter("radius must be positive");
  // Squared distances of a planar PPP form a 1-D Poisson process of rate
  // intensity*pi, so cumulative exponential gaps emit points already sorted.
  const double rate = intensity * kPi;
  const double cap = radius * radius;
  double acc = 0.0;
  r2.clear();
  for (;;) {
    acc += g.exponential() / rate;
    if (acc > cap) break;
    r2.push_back(acc);
  }
}

double lattice_spacing(LatticeKind kind, double intensity) {
  if (!(intensity > 0.0)) throw invalid_parameter("intensity must be positive");
  switch (kind) {
    case LatticeKind::square:
      return 1.0 / std::sqrt(intensity);
    case LatticeKind::triangular:
      return std::sqrt(2.0 / (std::sqrt(3.0) * intensity));
  }
  throw invalid_parameter("unknown lattice kind");
}

void lattice_points(LatticeKind kind, double intensity, double radius,
                    double u, double v, std::vector<double>& xs,
                    std::vector<double>& ys) {
  xs.clear();
  ys.clear();
  const double a = lattice_spacing(kind, intensity);
  const double b1x = a, b1y = 0.0;
  const double b2x = kind == LatticeKind::square ? 0.0 : 0.5 * a;
  const double b2y = kind == LatticeKind::square ? a : 0.5 * std::sqrt(3.0) * a;
  const double ox = u * b1x + v * b2x;
  const double oy = u * b1y + v * b2y;
  const double r2cap = radius * radius;
  const long jlo = static_cast<long>(std::floor((-radius - oy) / b2y));
  const long jhi = static_cast<long>(std::ceil((radius - oy) / b2y));
  for (long j = jlo; j <= jhi; ++j) {
    const double y = oy + static_cast<double>(j) * b2y;
    if (y * y > r2cap) continue;
    const double xr = std::sqrt(r2cap - y * y);
    const double rowx = ox + static_cast<double>(j) * b2x;
    const long ilo = static_cast<long>(std::ceil((-xr - rowx) / b1x));
    const long ihi = static_cast<long>(std::floor((xr - rowx) / b1x));
    for (long i = ilo; i <= ihi; ++i) {
      const double x = rowx + static_cast<double>(i) * b1x;
      if (x * x + y * y <= r2cap) {
        xs.push_back(x);
        ys.push_back(y);
      }
    }
  }
}

}  // namespace detail

namespace {

void sort_by_distance(PointSet& ps) {
  const std::size_t n = ps.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ps.dist2(a) < ps.dist2(b);
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = ps.xs[order[i]];
    ys[i] = ps.ys[order[i]];
  }
  ps.xs = std::move(xs);
  ps.ys = std::move(ys);
  ps.sorted = true;
}

}  // namespace

PointSet sample_ppp(double intensity, const Region& region,
                    rng::SplitMix64& stream) {
  std::vector<double> r2;
  detail::sample_ppp_radii2(intensity, region.radius, stream, r2);
  PointSet ps;
  ps.extent = region.radius;
  ps.xs.resize(r2.size());
  ps.ys.resize(r2.size());
  for (std::size_t i = 0; i < r2.size(); ++i) {
    const double r = std::sqrt(r2[i]);
    const double phi = 2.0 * kPi * stream.uniform01();
    ps.xs[i] = r * std::cos(phi);
    ps.ys[i] = r * std::sin(phi);
  }
  ps.sorted = true;
  return ps;
}

Deployment sample_hip(std::span<const TierSpec> tiers, const Region& region,
                      rng::SplitMix64& stream) {
  if (tiers.empty()) throw invalid_parameter("HIP model needs at least 1 tier");
  double total = 0.0;
  for (const TierSpec& t : tiers) {
    if (!(t.intensity > 0.0) || !(t.power > 0.0))
      throw invalid_parameter("tier intensity and power must be positive");
    total += t.intensity;
  }
  std::vector<double> r2;
  detail::sample_ppp_radii2(total, region.radius, stream, r2);
  std::vector<std::size_t> tier_of(r2.size());
  for (std::size_t i = 0; i < r2.size(); ++i) {
    const double u = stream.uniform01() * total;
    double acc = 0.0;
    std::size_t t = tiers.size() - 1;
    for (std::size_t k = 0; k < tiers.size(); ++k) {
      acc += tiers[k].intensity;
      if (u < acc) {
        t = k;
        break;
      }
    }
    tier_of[i] = t;
  }
  Deployment d;
  d.model = tiers.size() == 1 ? DeploymentModel::ppp : DeploymentModel::hip;
  d.tiers.resize(tiers.size());
  for (std::size_t k = 0; k < tiers.size(); ++k) {
    d.tiers[k].first.extent = region.radius;
    d.tiers[k].first.sorted = true;
    d.tiers[k].second = tiers[k].power;
  }
  for (std::size_t i = 0; i < r2.size(); ++i) {
    const double r = std::sqrt(r2[i]);
    const double phi = 2.0 * kPi * stream.uniform01();
    PointSet& ps = d.tiers[tier_of[i]].first;
    ps.xs.push_back(r * std::cos(phi));
    ps.ys.push_back(r * std::sin(phi));
  }
  return d;
}

Deployment sample_lattice(LatticeKind kind, double intensity,
                          const Region& region, rng::SplitMix64& stream) {
  const double u = stream.uniform01();
  const double v = stream.uniform01();
  PointSet ps;
  ps.extent = region.radius;
  detail::lattice_points(kind, intensity, region.radius, u, v, ps.xs, ps.ys);
  if (ps.size() < 2)
    throw insufficient_window(
        "region too small to contain at least 2 lattice points");
  sort_by_distance(ps);
  Deployment d;
  d.model = kind == LatticeKind::square ? DeploymentModel::square_lattice
                                        : DeploymentModel::triangular_lattice;
  d.tiers.emplace_back(std::move(ps), 1.0);
  return d;
}

// ---------------------------------------------------------------------------
// Voronoi vertices.
//
// For every point near the inner region we build its Voronoi cell by clipping
// a window-sized box with the bisector half-planes of nearby points, nearest
// first, stopping once no farther point can touch the cell (security-radius
// rule). Cell corners formed by two bisectors are tessellation vertices. Each
// candidate is then re-checked against the strict empty-circumcircle property
// using a uniform grid, so a returned site is correct by construction.
// ---------------------------------------------------------------------------

namespace {

struct UniformGrid {
  double x0, y0, cell;
  int nx, ny;
  std::vector<int> start;   // CSR offsets
  std::vector<int> items;   // point ids

  UniformGrid(std::span<const double> xs, std::span<const double> ys,
              double extent, double target_cell) {
    cell = target_cell;
    x0 = -extent;
    y0 = -extent;
    nx = std::max(1, static_cast<int>(std::ceil(2.0 * extent / cell)));
    ny = nx;
    const std::size_t n = xs.size();
    std::vector<int> bucket(n);
    start.assign(static_cast<std::size_t>(nx) * ny + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      bucket[i] = index_of(xs[i], ys[i]);
      ++start[bucket[i] + 1];
    }
    for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
    items.resize(n);
    std::vector<int> cursor(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i)
      items[cursor[bucket[i]]++] = static_cast<int>(i);
  }

  int clampi(int v, int hi) const { return std::min(std::max(v, 0), hi); }

  int index_of(double x, double y) const {
    const int ix = clampi(static_cast<int>((x - x0) / cell), nx - 1);
    const int iy = clampi(static_cast<int>((y - y0) / cell), ny - 1);
    return iy * nx + ix;
  }

  // Visit ids of points in cells overlapping the disk (cx, cy, radius).
  template <typename F>
  void for_disk(double cx, double cy, double radius, F&& f) const {
    const int ix0 = clampi(static_cast<int>((cx - radius - x0) / cell), nx - 1);
    const int ix1 = clampi(static_cast<int>((cx + radius - x0) / cell), nx - 1);
    const int iy0 = clampi(static_cast<int>((cy - radius - y0) / cell), ny - 1);
    const int iy1 = clampi(static_cast<int>((cy + radius - y0) / cell), ny - 1);
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix) {
        const int c = iy * nx + ix;
        for (int k = start[c]; k < start[c + 1]; ++k) f(items[k]);
      }
  }
};

struct CellPoly {
  std::vector<double> vx, vy;
  std::vector<int> owner;  // owner[i]: edge from vert i to i+1 (-1 = box)

  void init_box(double cx, double cy, double half) {
    vx = {cx - half, cx + half, cx + half, cx - half};
    vy = {cy - half, cy - half, cy + half, cy + half};
    owner = {-1, -1, -1, -1};
  }

  // Clip by the half-plane of points closer to p than to q.
  void clip_bisector(double px, double py, double qx, double qy, int qid) {
    const double nxv = qx - px, nyv = qy - py;
    const double c = nxv * 0.5 * (px + qx) + nyv * 0.5 * (py + qy);
    const std::size_t n = vx.size();
    std::vector<double> ox, oy;
    std::vector<int> oo;
    ox.reserve(n + 1);
    oy.reserve(n + 1);
    oo.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      const double da = c - (nxv * vx[i] + nyv * vy[i]);  // >= 0: inside
      const double db = c - (nxv * vx[j] + nyv * vy[j]);
      if (da >= 0.0) {
        ox.push_back(vx[i]);
        oy.push_back(vy[i]);
        oo.push_back(owner[i]);
      }
      if ((da >= 0.0) != (db >= 0.0)) {
        const double t = da / (da - db);
        ox.push_back(vx[i] + t * (vx[j] - vx[i]));
        oy.push_back(vy[i] + t * (vy[j] - vy[i]));
        // Leaving the half-plane: the cut edge belongs to q. Entering: the
        // remainder of edge i follows.
        oo.push_back(da >= 0.0 ? qid : owner[i]);
      }
    }
    vx = std::move(ox);
    vy = std::move(oy);
    owner = std::move(oo);
  }

  double max_dist2(double px, double py) const {
    double m = 0.0;
    for (std::size_t i = 0; i < vx.size(); ++i) {
      const double dx = vx[i] - px, dy = vy[i] - py;
      m = std::max(m, dx * dx + dy * dy);
    }
    return m;
  }
};

struct TripleKey {
  std::size_t a, b, c;
  bool operator==(const TripleKey&) const = default;
};

struct TripleHash {
  std::size_t operator()(const TripleKey& t) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t v : {t.a, t.b, t.c}) {
      h ^= v + 0x9e3779b97f4a7c15ull;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Circumcenter of (a, b, c); returns false for (near-)collinear triples.
bool circumcenter(double ax, double ay, double bx, double by, double cx,
                  double cy, double& ux, double& uy, double& r) {
  const double bx_ = bx - ax, by_ = by - ay;
  const double cx_ = cx - ax, cy_ = cy - ay;
  const double d = 2.0 * (bx_ * cy_ - by_ * cx_);
  const double scale = (bx_ * bx_ + by_ * by_) + (cx_ * cx_ + cy_ * cy_);
  if (std::abs(d) <= 1e-14 * scale) return false;
  const double b2 = bx_ * bx_ + by_ * by_;
  const double c2 = cx_ * cx_ + cy_ * cy_;
  const double px = (cy_ * b2 - by_ * c2) / d;
  const double py = (bx_ * c2 - cx_ * b2) / d;
  ux = ax + px;
  uy = ay + py;
  r = std::sqrt(px * px + py * py);
  return true;
}

}  // namespace

namespace detail {

std::vector<WorstCaseSite> voronoi_vertices_xy(std::span<const double> xs,
                                               std::span<const double> ys,
                                               double extent,
                                               double inner_radius) {
  const std::size_t n = xs.size();
  if (n < 3) throw insufficient_points("voronoi_vertices needs >= 3 points");
  if (!(inner_radius > 0.0) || !(inner_radius < extent))
    throw invalid_parameter(
        "inner_radius must be positive and strictly less than the region "
        "radius");

  const double density = static_cast<double>(n) / (kPi * extent * extent);
  const double spacing = 1.0 / std::sqrt(density);
  UniformGrid grid(xs, ys, extent, spacing);

  const double margin = 4.0 * spacing;
  const double box_half = 2.0 * extent + 1.0;

  std::unordered_set<TripleKey, TripleHash> seen;
  std::vector<WorstCaseSite> sites;
  std::vector<std::pair<double, int>> cand;  // (dist2 to p, id)
  CellPoly poly;

  for (std::size_t p = 0; p < n; ++p) {
    const double px = xs[p], py = ys[p];
    if (px * px + py * py > (inner_radius + margin) * (inner_radius + margin))
      continue;

    poly.init_box(px, py, box_half);
    double rho = 3.0 * spacing;
    bool done = false;
    while (!done) {
      cand.clear();
      grid.for_disk(px, py, rho, [&](int id) {
        if (static_cast<std::size_t>(id) == p) return;
        const double dx = xs[id] - px, dy = ys[id] - py;
        const double d2 = dx * dx + dy * dy;
        if (d2 <= rho * rho && d2 > 0.0) cand.emplace_back(d2, id);
      });
      std::sort(cand.begin(), cand.end());
      poly.init_box(px, py, box_half);
      for (const auto& [d2, id] : cand) {
        if (d2 >= 4.0 * poly.max_dist2(px, py)) {
          done = true;
          break;
        }
        poly.clip_bisector(px, py, xs[id], ys[id], id);
        if (poly.vx.size() < 3) break;
      }
      if (poly.vx.size() < 3) break;
      if (!done) {
        if (rho >= 2.0 * (extent + std::sqrt(px * px + py * py))) {
          done = true;  // candidate set already covered every point
        } else {
          rho *= 2.0;
        }
      }
    }
    if (poly.vx.size() < 3) continue;

    const std::size_t m = poly.vx.size();
    for (std::size_t i = 0; i < m; ++i) {
      const int ea = poly.owner[(i + m - 1) % m];
      const int eb = poly.owner[i];
      if (ea < 0 || eb < 0 || ea == eb) continue;
      const double vx_ = poly.vx[i], vy_ = poly.vy[i];
      if (vx_ * vx_ + vy_ * vy_ > inner_radius * inner_radius) continue;

      std::array<std::size_t, 3> tri{p, static_cast<std::size_t>(ea),
                                     static_cast<std::size_t>(eb)};
      std::sort(tri.begin(), tri.end());
      if (!seen.insert({tri[0], tri[1], tri[2]}).second) continue;

      double ux, uy, r;
      if (!circumcenter(xs[tri[0]], ys[tri[0]], xs[tri[1]], ys[tri[1]],
                        xs[tri[2]], ys[tri[2]], ux, uy, r))
        continue;
      if (ux * ux + uy * uy > inner_radius * inner_radius) continue;

      // Strict empty-circumcircle re-check (tolerance 1e-9 R).
      const double r2lim = r * r * (1.0 - 2e-9);
      bool empty = true;
      grid.for_disk(ux, uy, r, [&](int id) {
        if (!empty) return;
        const std::size_t sid = static_cast<std::size_t>(id);
        if (sid == tri[0] || sid == tri[1] || sid == tri[2]) return;
        const double dx = xs[id] - ux, dy = ys[id] - uy;
        if (dx * dx + dy * dy < r2lim) empty = false;
      });
      if (!empty) continue;

      // Equidistance invariant on the canonical center.
      bool ok = true;
      for (std::size_t t : tri) {
        const double dx = xs[t] - ux, dy = ys[t] - uy;
        if (std::abs(std::sqrt(dx * dx + dy * dy) - r) > 1e-9 * r) ok = false;
      }
      if (!ok) continue;

      sites.push_back({ux, uy, tri, r});
    }
  }

  // Cocircular degeneracies produce distinct triples with one center;
  // deduplicate by coordinate (1e-9) keeping the lexicographically first.
  std::sort(sites.begin(), sites.end(), [](const auto& a, const auto& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.triple < b.triple;
  });
  std::vector<WorstCaseSite> out;
  out.reserve(sites.size());
  for (const auto& s : sites) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (s.x - it->x > 1e-9) break;
      const double dx = s.x - it->x, dy = s.y - it->y;
      if (dx * dx + dy * dy < 1e-18) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(s);
  }
  return out;
}

}  // namespace detail

std::vector<WorstCaseSite> voronoi_vertices(const PointSet& points,
                                            double inner_radius) {
  return detail::voronoi_vertices_xy(points.xs, points.ys, points.extent,
                                     inner_radius);
}

}  // namespace misr::pointfields
