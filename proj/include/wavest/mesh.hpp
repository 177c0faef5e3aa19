#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wavest {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Triangle = std::array<int, 3>;

/// Edge shared by two triangles. `left_tri` is the triangle that traverses
/// endpoints[0] -> endpoints[1] counter-clockwise; `normal` points from
/// left_tri into right_tri.
struct InteriorEdge {
  std::array<int, 2> endpoints{};
  int left_tri = -1;
  int right_tri = -1;
  double length = 0.0;
  Point normal;
};

struct BoundaryEdge {
  std::array<int, 2> endpoints{};
  int tri = -1;
};

struct EdgeSet {
  std::vector<InteriorEdge> interior;
  std::vector<BoundaryEdge> boundary;
};

/// Rejected mesh input. `line` is the 1-based payload line, or 0 when the
/// problem is topological rather than syntactic.
class MeshError : public std::runtime_error {
 public:
  MeshError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Builds edge adjacency from counter-clockwise triangles. Edges come out
/// sorted by their (min, max) vertex pair. Throws MeshError if an edge is
/// shared by more than two triangles.
EdgeSet build_edges(const std::vector<Point>& vertices, const std::vector<Triangle>& triangles);

/// Conforming triangulation of a polygonal domain; immutable once built.
class Mesh {
 public:
  /// Clockwise triangles are reoriented (their count is reported by
  /// `reoriented()`). Degenerate triangles, dangling vertices, non-manifold
  /// edges and boundary flags that disagree with the topological boundary
  /// throw MeshError.
  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
       std::vector<bool> boundary_vertex);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_edges() const { return edges_.interior.size() + edges_.boundary.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<bool>& boundary_vertex() const { return boundary_; }
  const std::vector<InteriorEdge>& interior_edges() const { return edges_.interior; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return edges_.boundary; }

  /// Longest edge of triangle k.
  double h_K(std::size_t k) const { return diameter_[k]; }
  const std::vector<double>& diameters() const { return diameter_; }
  double h() const { return h_max_; }
  double area(std::size_t k) const { return area_[k]; }
  double total_area() const;
  double min_angle() const;
  std::size_t reoriented() const { return reoriented_; }

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<bool> boundary_;
  EdgeSet edges_;
  std::vector<double> diameter_;
  std::vector<double> area_;
  double h_max_ = 0.0;
  std::size_t reoriented_ = 0;
};

enum class StructuredPattern { diagonal, crisscross };

/// Unit square split into n x n cells. `diagonal` cuts each cell along its
/// lower-left to upper-right diagonal (2n^2 triangles); `crisscross` adds the
/// cell centre (4n^2 triangles).
Mesh generate_structured(std::size_t n, StructuredPattern pattern);

struct ImportedMesh {
  Mesh mesh;
  std::vector<std::string> warnings;
};

/// Parses the text format
///   nv nt
///   x y b        (nv lines, b in {0,1})
///   i j k        (nt lines, zero-based)
ImportedMesh import_mesh(std::string_view text);

/// Writes `mesh` in the format read by import_mesh.
std::string export_mesh(const Mesh& mesh);

double signed_area(const Point& a, const Point& b, const Point& c);

}  // namespace wavest
