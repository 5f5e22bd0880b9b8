#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bjorling/surface.hpp"
#include "bjorling/version.hpp"

namespace bjorling {

struct GridDomain {
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;
  int nu = 2, nv = 2;
};

struct MeshVertex {
  Vec3 position;
  Vec3 normal;
};

struct SurfaceMesh {
  std::vector<MeshVertex> vertices;            // row-major: index = j * nu + i
  std::vector<std::array<int, 3>> faces;       // CCW w.r.t. the vertex normals
  std::vector<bool> singular;                  // per-vertex flag
  int nu = 0, nv = 0;
};

inline int sampling_threads() {
  if (const char* env = std::getenv("BJORLING_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Uniform nu x nv lattice; each quad splits along the (i,j)->(i+1,j+1)
// diagonal; faces touching singular vertices are dropped. Vertices are
// written independently into a preallocated array, so threaded and serial
// sampling produce bit-identical meshes.
inline SurfaceMesh sample_grid(const SurfaceEvaluator& surface, const GridDomain& dom) {
  if (dom.nu < 2 || dom.nv < 2) throw Error("grid needs nu, nv >= 2");
  if (!(dom.u1 > dom.u0) || !(dom.v1 > dom.v0)) throw Error("grid needs u1 > u0 and v1 > v0");

  SurfaceMesh mesh;
  mesh.nu = dom.nu;
  mesh.nv = dom.nv;
  mesh.vertices.resize(static_cast<std::size_t>(dom.nu) * dom.nv);
  mesh.singular.assign(mesh.vertices.size(), false);

  auto sample_row = [&](int j) {
    double v = dom.v0 + (dom.v1 - dom.v0) * j / (dom.nv - 1);
    for (int i = 0; i < dom.nu; ++i) {
      double u = dom.u0 + (dom.u1 - dom.u0) * i / (dom.nu - 1);
      SurfacePoint p = surface.at(Complex(u, v));
      std::size_t idx = static_cast<std::size_t>(j) * dom.nu + i;
      mesh.vertices[idx] = {p.position, p.unit_normal};
      mesh.singular[idx] = p.conformal_factor == 0.0;
    }
  };

  int threads = std::min(sampling_threads(), dom.nv);
  if (threads <= 1) {
    for (int j = 0; j < dom.nv; ++j) sample_row(j);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int j = t; j < dom.nv; j += threads) sample_row(j);
      });
    for (auto& th : pool) th.join();
  }

  for (int j = 0; j + 1 < dom.nv; ++j)
    for (int i = 0; i + 1 < dom.nu; ++i) {
      int v00 = j * dom.nu + i;
      int v10 = j * dom.nu + i + 1;
      int v01 = (j + 1) * dom.nu + i;
      int v11 = (j + 1) * dom.nu + i + 1;
      if (!(mesh.singular[v00] || mesh.singular[v10] || mesh.singular[v11]))
        mesh.faces.push_back({v00, v10, v11});
      if (!(mesh.singular[v00] || mesh.singular[v11] || mesh.singular[v01]))
        mesh.faces.push_back({v00, v11, v01});
    }
  return mesh;
}

namespace detail {
inline void obj_number(std::string& out, double v) {
  char buf[40];
  int n = std::snprintf(buf, sizeof(buf), "%.17g", v);
  out.append(buf, buf + n);
}
}  // namespace detail

// ASCII Wavefront OBJ, LF line endings, 17 significant digits, deterministic
// row-major ordering. Re-export of the same mesh is byte-identical.
inline void export_obj(const SurfaceMesh& mesh, std::ostream& sink) {
  std::string out;
  out.reserve(mesh.vertices.size() * 80 + mesh.faces.size() * 30 + 64);
  out += "# bjorling ";
  out += kVersion;
  out += "\n";
  for (const auto& v : mesh.vertices) {
    out += "v ";
    detail::obj_number(out, v.position.x);
    out += ' ';
    detail::obj_number(out, v.position.y);
    out += ' ';
    detail::obj_number(out, v.position.z);
    out += '\n';
  }
  for (const auto& v : mesh.vertices) {
    out += "vn ";
    detail::obj_number(out, v.normal.x);
    out += ' ';
    detail::obj_number(out, v.normal.y);
    out += ' ';
    detail::obj_number(out, v.normal.z);
    out += '\n';
  }
  for (const auto& f : mesh.faces) {
    out += "f ";
    for (int k = 0; k < 3; ++k) {
      if (k) out += ' ';
      std::string idx = std::to_string(f[k] + 1);
      out += idx;
      out += "//";
      out += idx;
    }
    out += '\n';
  }
  sink.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!sink) throw IOFailure("failed to write OBJ stream");
}

// Minimal OBJ reader for round-trip checks: v/vn/f lines only.
inline SurfaceMesh parse_obj(std::istream& in) {
  SurfaceMesh mesh;
  std::vector<Vec3> normals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      Vec3 p;
      if (std::sscanf(line.c_str() + 2, "%lf %lf %lf", &p.x, &p.y, &p.z) != 3)
        throw IOFailure("malformed vertex line: " + line);
      mesh.vertices.push_back({p, Vec3{}});
    } else if (line.rfind("vn ", 0) == 0) {
      Vec3 n;
      if (std::sscanf(line.c_str() + 3, "%lf %lf %lf", &n.x, &n.y, &n.z) != 3)
        throw IOFailure("malformed normal line: " + line);
      normals.push_back(n);
    } else if (line.rfind("f ", 0) == 0) {
      std::array<int, 3> f{};
      int n1 = 0, n2 = 0, n3 = 0;
      if (std::sscanf(line.c_str() + 2, "%d//%d %d//%d %d//%d", &f[0], &n1, &f[1], &n2, &f[2],
                      &n3) != 6)
        throw IOFailure("malformed face line: " + line);
      f = {f[0] - 1, f[1] - 1, f[2] - 1};
      for (int idx : f)
        if (idx < 0 || idx >= static_cast<int>(mesh.vertices.size()))
          throw IOFailure("face index out of range: " + line);
      mesh.faces.push_back(f);
    }
  }
  for (std::size_t i = 0; i < normals.size() && i < mesh.vertices.size(); ++i)
    mesh.vertices[i].normal = normals[i];
  mesh.singular.assign(mesh.vertices.size(), false);
  return mesh;
}

}  // namespace bjorling
