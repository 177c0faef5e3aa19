#include "wavest/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace wavest {

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(b.x - a.x, b.y - a.y); }

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

}  // namespace

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

EdgeSet build_edges(const std::vector<Point>& vertices, const std::vector<Triangle>& triangles) {
  // (key, triangle, local edge index); local edge j runs tri[j] -> tri[j+1].
  struct HalfEdge {
    std::uint64_t key;
    int tri;
    int local;
  };
  std::vector<HalfEdge> half;
  half.reserve(3 * triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (int j = 0; j < 3; ++j)
      half.push_back({edge_key(triangles[t][j], triangles[t][(j + 1) % 3]), static_cast<int>(t), j});
  std::sort(half.begin(), half.end(), [](const HalfEdge& a, const HalfEdge& b) {
    return a.key != b.key ? a.key < b.key : a.tri < b.tri;
  });

  EdgeSet edges;
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    while (j < half.size() && half[j].key == half[i].key) ++j;
    const int a = static_cast<int>(half[i].key >> 32);
    const int b = static_cast<int>(half[i].key & 0xffffffffu);
    if (j - i > 2)
      throw MeshError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") shared by " +
                      std::to_string(j - i) + " triangles");
    if (j - i == 1) {
      edges.boundary.push_back({{a, b}, half[i].tri});
    } else {
      InteriorEdge e;
      e.endpoints = {a, b};
      // The triangle running a -> b counter-clockwise lies to the left of a -> b.
      const auto& t0 = triangles[half[i].tri];
      const bool first_is_left = t0[half[i].local] == a;
      e.left_tri = first_is_left ? half[i].tri : half[i + 1].tri;
      e.right_tri = first_is_left ? half[i + 1].tri : half[i].tri;
      const Point& pa = vertices[a];
      const Point& pb = vertices[b];
      e.length = distance(pa, pb);
      e.normal = {(pb.y - pa.y) / e.length, -(pb.x - pa.x) / e.length};
      edges.interior.push_back(e);
    }
    i = j;
  }
  return edges;
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
           std::vector<bool> boundary_vertex)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_(std::move(boundary_vertex)) {
  const int nv = static_cast<int>(vertices_.size());
  if (nv == 0 || triangles_.empty()) throw MeshError("mesh has no vertices or no triangles");
  if (boundary_.size() != vertices_.size())
    throw MeshError("boundary flag count does not match vertex count");

  std::vector<bool> used(vertices_.size(), false);
  for (std::size_t k = 0; k < triangles_.size(); ++k) {
    auto& tri = triangles_[k];
    for (int v : tri)
      if (v < 0 || v >= nv)
        throw MeshError("triangle " + std::to_string(k) + " references vertex " +
                        std::to_string(v) + " out of range");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw MeshError("triangle " + std::to_string(k) + " repeats a vertex");
    const double a = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (a == 0.0) throw MeshError("triangle " + std::to_string(k) + " is degenerate");
    if (a < 0.0) {
      std::swap(tri[1], tri[2]);
      ++reoriented_;
    }
    for (int v : tri) used[v] = true;
  }
  for (int v = 0; v < nv; ++v)
    if (!used[v]) throw MeshError("vertex " + std::to_string(v) + " is not used by any triangle");

  edges_ = build_edges(vertices_, triangles_);

  std::vector<bool> topo_boundary(vertices_.size(), false);
  for (const auto& e : edges_.boundary) topo_boundary[e.endpoints[0]] = topo_boundary[e.endpoints[1]] = true;
  for (int v = 0; v < nv; ++v)
    if (topo_boundary[v] != boundary_[v])
      throw MeshError("vertex " + std::to_string(v) + (boundary_[v] ? " is flagged boundary but is interior"
                                                                   : " lies on the boundary but is not flagged"));

  diameter_.resize(triangles_.size());
  area_.resize(triangles_.size());
  for (std::size_t k = 0; k < triangles_.size(); ++k) {
    const auto& tri = triangles_[k];
    const Point& p0 = vertices_[tri[0]];
    const Point& p1 = vertices_[tri[1]];
    const Point& p2 = vertices_[tri[2]];
    diameter_[k] = std::max({distance(p0, p1), distance(p1, p2), distance(p2, p0)});
    area_[k] = signed_area(p0, p1, p2);
    h_max_ = std::max(h_max_, diameter_[k]);
  }
}

double Mesh::total_area() const {
  double s = 0.0;
  for (double a : area_) s += a;
  return s;
}

double Mesh::min_angle() const {
  double m = std::numbers::pi;
  for (const auto& tri : triangles_) {
    for (int j = 0; j < 3; ++j) {
      const Point& p = vertices_[tri[j]];
      const Point& q = vertices_[tri[(j + 1) % 3]];
      const Point& r = vertices_[tri[(j + 2) % 3]];
      const double ux = q.x - p.x, uy = q.y - p.y, vx = r.x - p.x, vy = r.y - p.y;
      m = std::min(m, std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy));
    }
  }
  return m;
}

Mesh generate_structured(std::size_t n, StructuredPattern pattern) {
  if (n == 0) throw std::invalid_argument("structured mesh needs n >= 1");
  const std::size_t side = n + 1;
  std::vector<Point> vertices;
  std::vector<bool> boundary;
  for (std::size_t j = 0; j < side; ++j)
    for (std::size_t i = 0; i < side; ++i) {
      vertices.push_back({static_cast<double>(i) / static_cast<double>(n),
                          static_cast<double>(j) / static_cast<double>(n)});
      boundary.push_back(i == 0 || j == 0 || i == n || j == n);
    }
  auto id = [side](std::size_t i, std::size_t j) { return static_cast<int>(j * side + i); };

  std::vector<Triangle> triangles;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if (pattern == StructuredPattern::diagonal) {
        triangles.push_back({a, b, c});
        triangles.push_back({a, c, d});
      } else {
        const int m = static_cast<int>(vertices.size());
        vertices.push_back({(static_cast<double>(i) + 0.5) / static_cast<double>(n),
                            (static_cast<double>(j) + 0.5) / static_cast<double>(n)});
        boundary.push_back(false);
        triangles.push_back({a, b, m});
        triangles.push_back({b, c, m});
        triangles.push_back({c, d, m});
        triangles.push_back({d, a, m});
      }
    }
  return Mesh(std::move(vertices), std::move(triangles), std::move(boundary));
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw MeshError(std::string("malformed ") + what + " '" + std::string(tok) + "'", line);
  return value;
}

}  // namespace

ImportedMesh import_mesh(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos <= text.size();) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  // Drop trailing blank lines only; blank lines inside the payload are errors.
  while (!lines.empty() && tokens(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw MeshError("empty mesh payload", 1);

  const auto header = tokens(lines[0]);
  if (header.size() != 2) throw MeshError("header must be 'nv nt'", 1);
  const auto nv = parse_number<long long>(header[0], 1, "vertex count");
  const auto nt = parse_number<long long>(header[1], 1, "triangle count");
  if (nv <= 0 || nt <= 0) throw MeshError("counts must be positive", 1);
  if (static_cast<long long>(lines.size()) != 1 + nv + nt)
    throw MeshError("expected " + std::to_string(1 + nv + nt) + " lines, found " +
                        std::to_string(lines.size()),
                    lines.size());

  std::vector<Point> vertices(static_cast<std::size_t>(nv));
  std::vector<bool> boundary(static_cast<std::size_t>(nv));
  for (long long v = 0; v < nv; ++v) {
    const std::size_t ln = static_cast<std::size_t>(v) + 2;
    const auto tok = tokens(lines[ln - 1]);
    if (tok.size() != 3) throw MeshError("vertex line must be 'x y b'", ln);
    vertices[v] = {parse_number<double>(tok[0], ln, "coordinate"),
                   parse_number<double>(tok[1], ln, "coordinate")};
    const int b = parse_number<int>(tok[2], ln, "boundary flag");
    if (b != 0 && b != 1) throw MeshError("boundary flag must be 0 or 1", ln);
    boundary[v] = b == 1;
  }

  std::vector<Triangle> triangles(static_cast<std::size_t>(nt));
  std::vector<std::string> warnings;
  for (long long t = 0; t < nt; ++t) {
    const std::size_t ln = static_cast<std::size_t>(nv + t) + 2;
    const auto tok = tokens(lines[ln - 1]);
    if (tok.size() != 3) throw MeshError("triangle line must be 'i j k'", ln);
    for (int j = 0; j < 3; ++j) {
      const int idx = parse_number<int>(tok[j], ln, "vertex index");
      if (idx < 0 || idx >= nv) throw MeshError("vertex index out of range", ln);
      triangles[t][j] = idx;
    }
    const auto& tri = triangles[t];
    if (signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) < 0.0)
      warnings.push_back("line " + std::to_string(ln) + ": triangle " + std::to_string(t) +
                         " listed clockwise, reoriented");
  }

  Mesh mesh(std::move(vertices), std::move(triangles), std::move(boundary));
  return {std::move(mesh), std::move(warnings)};
}

std::string export_mesh(const Mesh& mesh) {
  std::ostringstream os;
  os << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  char buf[96];
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const auto& p = mesh.vertices()[v];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", p.x, p.y, mesh.boundary_vertex()[v] ? 1 : 0);
    os << buf;
  }
  for (const auto& t : mesh.triangles()) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return os.str();
}

}  // namespace wavest
