#include "pantskit/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pantskit {

TriMesh to_mesh(const TorusTriangulation& tri) {
  TriMesh mesh;
  mesh.vertices.reserve(tri.vertices.size());
  for (const Complex& p : tri.vertices) mesh.vertices.push_back({p.real(), p.imag(), 0.0});
  mesh.faces.reserve(tri.triangles.size());
  for (const TriFace& f : tri.triangles) mesh.faces.push_back({f.v[0], f.v[1], f.v[2]});
  return mesh;
}

namespace {

void check_writable(const TriMesh& mesh) {
  if (mesh.vertices.empty() || mesh.faces.empty())
    throw Error(ErrorCode::IoError, "refusing to export an empty mesh");
  const int V = static_cast<int>(mesh.vertices.size());
  for (const auto& f : mesh.faces)
    for (int k : f)
      if (k < 0 || k >= V) throw Error(ErrorCode::IoError, "face references a missing vertex");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

void write_off(const TriMesh& mesh, const std::string& path) {
  check_writable(mesh);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  for (const Vec3& v : mesh.vertices)
    out << fmt(v.x()) << ' ' << fmt(v.y()) << ' ' << fmt(v.z()) << '\n';
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

void write_obj(const TriMesh& mesh, const std::string& path) {
  check_writable(mesh);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  for (const Vec3& v : mesh.vertices)
    out << "v " << fmt(v.x()) << ' ' << fmt(v.y()) << ' ' << fmt(v.z()) << '\n';
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

TriMesh read_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "OFF") throw Error(ErrorCode::IoError, "not an OFF file: " + path);
  size_t nv = 0, nf = 0, ne = 0;
  in >> nv >> nf >> ne;
  TriMesh mesh;
  mesh.vertices.resize(nv);
  for (Vec3& v : mesh.vertices) in >> v.x() >> v.y() >> v.z();
  mesh.faces.resize(nf);
  for (auto& f : mesh.faces) {
    int arity = 0;
    in >> arity >> f[0] >> f[1] >> f[2];
    if (arity != 3) throw Error(ErrorCode::IoError, "non-triangular face in " + path);
  }
  if (!in) throw Error(ErrorCode::IoError, "truncated OFF file: " + path);
  return mesh;
}

TriMesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  TriMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 v;
      if (!(ls >> v.x() >> v.y() >> v.z()))
        throw Error(ErrorCode::IoError, "bad vertex line in " + path);
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      if (!(ls >> f[0] >> f[1] >> f[2]))
        throw Error(ErrorCode::IoError, "bad face line in " + path);
      for (int& k : f) --k;
      mesh.faces.push_back(f);
    }
  }
  return mesh;
}

}  // namespace pantskit
