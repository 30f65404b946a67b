#ifndef SPHLS_GEOMETRY_HPP
#define SPHLS_GEOMETRY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphls {

/// A point on the unit sphere S^2. The constructor normalizes its input
/// and rejects the zero vector.
struct SpherePoint {
  double x{0.0}, y{0.0}, z{1.0};

  SpherePoint() = default;
  SpherePoint(double px, double py, double pz);

  double dot(const SpherePoint& o) const { return x * o.x + y * o.y + z * o.z; }
};

/// Geodesic distance arccos(a.b), the dot product clamped to [-1,1].
double geodesic_distance(const SpherePoint& a, const SpherePoint& b);

/// Ordered point set with provenance metadata.
struct PointSet {
  std::vector<SpherePoint> points;
  std::string label;
  std::optional<int> claimed_exactness;

  std::size_t size() const { return points.size(); }
  const SpherePoint& operator[](std::size_t i) const { return points[i]; }
};

struct MeshReport {
  double separation{0.0};          // gamma, radians
  double mesh_norm_estimate{0.0};  // delta, radians (grid lower bound)
  double mesh_ratio{0.0};
  std::size_t eval_count{0};
};

/// Generalized spiral nodes: deterministic, includes both poles for count >= 2.
/// count = 1 returns the north pole.
PointSet generate_spiral(std::size_t count);

/// Exact minimum pairwise geodesic distance; requires at least 2 points.
double separation_distance(const PointSet& ps);

/// max over eval of the min distance to ps. A lower bound of the true
/// mesh norm; report it together with the evaluation grid size.
double mesh_norm(const PointSet& ps, const PointSet& eval);

MeshReport mesh_report(const PointSet& ps, const PointSet& eval);

/// Text point files: optional '#' key=value header lines, then
/// "x y z" per line (17 significant digits on write).
PointSet load_points(const std::string& path);
void save_points(const PointSet& ps, const std::string& path);

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sphls

#endif
