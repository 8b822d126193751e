#include "ct2/mesh.hpp"

#include <set>

namespace ct2 {

namespace {

std::string tri_name(std::size_t t) { return "triangle " + std::to_string(t); }

std::string edge_name(const std::pair<int, int> &e) {
  return "edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) + ")";
}

// Strictly between a and b on the segment, exactly.
bool inside_segment(const Point2<Rational> &a, const Point2<Rational> &b, const Point2<Rational> &p) {
  const auto ab = b - a, ap = p - a;
  if (ab.x * ap.y - ab.y * ap.x != 0)
    return false;
  const Rational dot = ab.x * ap.x + ab.y * ap.y;
  const Rational len2 = ab.x * ab.x + ab.y * ab.y;
  return dot > 0 && dot < len2;
}

} // namespace

Triangulation::Triangulation(std::vector<Point2<Rational>> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (triangles_.empty())
    throw ValidationError("mesh has no triangles");
  const int nv = static_cast<int>(vertices_.size());
  std::set<std::array<int, 3>> seen;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto &ix = triangles_[t];
    for (int v : ix)
      if (v < 0 || v >= nv)
        throw ValidationError(tri_name(t) + ": vertex index " + std::to_string(v) + " out of range");
    if (ix[0] == ix[1] || ix[1] == ix[2] || ix[0] == ix[2])
      throw ValidationError(tri_name(t) + ": repeated vertex index");
    const auto tri = triangle<Rational>(t);
    if (signed_area2(tri) == 0 || is_degenerate(triangle<double>(t)))
      throw ValidationError(tri_name(t) + ": degenerate triangle");
    if (signed_area2(tri) < 0)
      throw ValidationError(tri_name(t) + ": clockwise orientation");
    auto key = ix;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      throw ValidationError(tri_name(t) + ": duplicate triangle");
    for (int k = 0; k < 3; ++k) {
      const int a = ix[static_cast<std::size_t>(k)], b = ix[static_cast<std::size_t>((k + 1) % 3)];
      edges_[{std::min(a, b), std::max(a, b)}].push_back({static_cast<int>(t), k});
    }
  }
  for (const auto &[e, uses] : edges_) {
    if (uses.size() > 2)
      throw ValidationError(edge_name(e) + ": shared by more than two triangles");
    if (uses.size() == 2) {
      const auto &t0 = triangles_[static_cast<std::size_t>(uses[0].triangle)];
      const auto &t1 = triangles_[static_cast<std::size_t>(uses[1].triangle)];
      if (t0[static_cast<std::size_t>(uses[0].local)] == t1[static_cast<std::size_t>(uses[1].local)])
        throw ValidationError(edge_name(e) + ": same orientation in triangles " + std::to_string(uses[0].triangle) +
                              " and " + std::to_string(uses[1].triangle));
    }
  }
  // Conforming: no vertex may lie strictly inside an edge.
  std::set<int> used;
  for (const auto &ix : triangles_)
    used.insert(ix.begin(), ix.end());
  std::set<std::pair<Rational, Rational>> coords;
  for (int v : used) {
    const auto &p = vertices_[static_cast<std::size_t>(v)];
    if (!coords.insert({p.x, p.y}).second)
      throw ValidationError("vertex " + std::to_string(v) + " duplicates the coordinates of another vertex");
  }
  for (const auto &[e, uses] : edges_) {
    const auto &a = vertices_[static_cast<std::size_t>(e.first)];
    const auto &b = vertices_[static_cast<std::size_t>(e.second)];
    for (int v : used)
      if (v != e.first && v != e.second && inside_segment(a, b, vertices_[static_cast<std::size_t>(v)]))
        throw ValidationError("vertex " + std::to_string(v) + " lies on " + edge_name(e) +
                              " (non-conforming mesh)");
  }
}

std::vector<std::pair<int, int>> Triangulation::interior_edges() const {
  std::vector<std::pair<int, int>> out;
  for (const auto &[e, uses] : edges_)
    if (uses.size() == 2)
      out.push_back(e);
  return out;
}

std::vector<std::pair<int, int>> Triangulation::boundary_edges() const {
  std::vector<std::pair<int, int>> out;
  for (const auto &[e, uses] : edges_)
    if (uses.size() == 1)
      out.push_back(e);
  return out;
}

} // namespace ct2
