#pragma once

#include <array>
#include <string>
#include <vector>

#include "pantskit/torus.hpp"

namespace pantskit {

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

// Flat embedding of the quotient complex: vertices at (Re, Im, 0).
TriMesh to_mesh(const TorusTriangulation& tri);

// Plain-text OFF / OBJ with 15 significant digits; rejects empty meshes.
void write_off(const TriMesh& mesh, const std::string& path);
void write_obj(const TriMesh& mesh, const std::string& path);
TriMesh read_off(const std::string& path);
TriMesh read_obj(const std::string& path);

}  // namespace pantskit
