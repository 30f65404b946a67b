#include "sphls/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace sphls {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

SpherePoint::SpherePoint(double px, double py, double pz) {
  const double r = std::sqrt(px * px + py * py + pz * pz);
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("SpherePoint: zero or non-finite vector");
  x = px / r;
  y = py / r;
  z = pz / r;
}

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) {
  const double t = std::clamp(a.dot(b), -1.0, 1.0);
  return std::acos(t);
}

PointSet generate_spiral(std::size_t count) {
  if (count == 0) throw std::invalid_argument("generate_spiral: count must be >= 1");
  PointSet ps;
  ps.label = "spiral:" + std::to_string(count);
  ps.points.reserve(count);
  if (count == 1) {
    ps.points.emplace_back(0.0, 0.0, 1.0);
    return ps;
  }
  const double n = static_cast<double>(count);
  double phi = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    const double h = -1.0 + 2.0 * (static_cast<double>(k) - 1.0) / (n - 1.0);
    const double s2 = std::max(0.0, 1.0 - h * h);
    const double sin_theta = std::sqrt(s2);
    if (k == 1 || k == count) {
      phi = 0.0;
    } else {
      phi = std::fmod(phi + 3.6 / std::sqrt(n * s2), kTwoPi);
    }
    SpherePoint p;
    p.x = sin_theta * std::cos(phi);
    p.y = sin_theta * std::sin(phi);
    p.z = h;
    ps.points.push_back(p);  // already unit up to rounding
  }
  return ps;
}

double separation_distance(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n < 2) throw std::invalid_argument("separation_distance: need at least 2 points");
  double min_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      min_d = std::min(min_d, geodesic_distance(ps[i], ps[j]));
  return min_d;
}

double mesh_norm(const PointSet& ps, const PointSet& eval) {
  if (ps.points.empty() || eval.points.empty())
    throw std::invalid_argument("mesh_norm: empty point set");
  double max_min = 0.0;
  for (const auto& x : eval.points) {
    // min distance <-> max dot product
    double best = -1.0;
    for (const auto& p : ps.points) best = std::max(best, x.dot(p));
    max_min = std::max(max_min, std::acos(std::clamp(best, -1.0, 1.0)));
  }
  return max_min;
}

MeshReport mesh_report(const PointSet& ps, const PointSet& eval) {
  MeshReport r;
  r.separation = separation_distance(ps);
  r.mesh_norm_estimate = mesh_norm(ps, eval);
  r.mesh_ratio = r.separation > 0.0 ? r.mesh_norm_estimate / r.separation : 0.0;
  r.eval_count = eval.size();
  return r;
}

PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open points file: " + path);
  PointSet ps;
  ps.label = path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      auto eq = body.find('=');
      if (eq != std::string::npos) {
        std::string key = body.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        if (key == "exactness") ps.claimed_exactness = std::stoi(body.substr(eq + 1));
      }
      continue;
    }
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z))
      throw parse_error(path + ":" + std::to_string(lineno) + ": malformed point line");
    const double r = std::sqrt(x * x + y * y + z * z);
    if (std::abs(r - 1.0) > 1e-6)
      throw parse_error(path + ":" + std::to_string(lineno) +
                        ": vector norm " + fmt17(r) + " too far from 1");
    if (std::abs(r - 1.0) > 1e-9)
      std::fprintf(stderr, "warning: %s:%zu: renormalizing point (|norm-1| = %.3e)\n",
                   path.c_str(), lineno, std::abs(r - 1.0));
    try {
      ps.points.emplace_back(x, y, z);
    } catch (const std::invalid_argument&) {
      throw parse_error(path + ":" + std::to_string(lineno) + ": zero vector");
    }
  }
  if (ps.points.empty()) throw parse_error(path + ": no points");
  return ps;
}

void save_points(const PointSet& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write points file: " + path);
  if (ps.claimed_exactness) out << "# exactness=" << *ps.claimed_exactness << "\n";
  if (!ps.label.empty()) out << "# label=" << ps.label << "\n";
  for (const auto& p : ps.points)
    out << fmt17(p.x) << ' ' << fmt17(p.y) << ' ' << fmt17(p.z) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sphls
