// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/mesh.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "selgraph/error.hpp"

namespace selgraph {
namespace {

struct Corner {
  std::int64_t v = 0;
  std::int64_t vt = 0;  // 0 when absent
  std::int64_t vn = 0;
};

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  // std::from_chars for double is unavailable on older libstdc++; strtod on a
  // bounded copy is equivalent here.
  std::string copy(tok);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || copy.empty() || !std::isfinite(v)) {
    parse_error(line, "malformed number '" + copy + "'");
  }
  return v;
}

std::int64_t parse_index(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v == 0) {
    parse_error(line, "malformed index '" + std::string(tok) + "'");
  }
  return v;
}

Corner parse_corner(std::string_view tok, std::size_t line) {
  Corner c;
  const auto s1 = tok.find('/');
  if (s1 == std::string_view::npos) {
    c.v = parse_index(tok, line);
    return c;
  }
  c.v = parse_index(tok.substr(0, s1), line);
  const auto rest = tok.substr(s1 + 1);
  const auto s2 = rest.find('/');
  const auto vt = rest.substr(0, s2);
  if (!vt.empty()) c.vt = parse_index(vt, line);
  if (s2 != std::string_view::npos) {
    const auto vn = rest.substr(s2 + 1);
    if (vn.empty() || vn.find('/') != std::string_view::npos) {
      parse_error(line, "malformed face corner '" + std::string(tok) + "'");
    }
    c.vn = parse_index(vn, line);
  }
  return c;
}

// OBJ indices are 1-based; negative values count back from the end.
std::uint32_t resolve(std::int64_t idx, std::size_t count, std::size_t line, const char* what) {
  const std::int64_t n = static_cast<std::int64_t>(count);
  const std::int64_t r = idx > 0 ? idx - 1 : n + idx;
  if (r < 0 || r >= n) parse_error(line, std::string(what) + " index out of range");
  return static_cast<std::uint32_t>(r);
}

}  // namespace

double MeshSurface::face_area(std::size_t f) const {
  const auto& t = faces[f];
  return 0.5 * (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]).norm();
}

double MeshSurface::total_area() const {
  double a = 0.0;
  for (std::size_t f = 0; f < faces.size(); ++f) a += face_area(f);
  return a;
}

double MeshSurface::bounding_diagonal() const {
  if (vertices.empty()) return 0.0;
  Vec3 lo = vertices.front();
  Vec3 hi = lo;
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

void MeshSurface::validate() const {
  for (const auto& f : faces) {
    for (auto i : f) {
      if (i >= vertices.size()) fail(ErrorCode::kShapeError, "face index out of range");
    }
  }
  if (face_normals.size() != faces.size() || (has_uvs() && face_uvs.size() != faces.size())) {
    fail(ErrorCode::kShapeError, "per-face arrays do not match the face count");
  }
  for (const auto& n : face_normals) {
    if (std::abs(n.norm() - 1.0) > 1e-6) fail(ErrorCode::kShapeError, "face normal not unit");
  }
}

MeshSurface parse_obj(std::string_view text) {
  std::vector<Vec3> positions;
  std::vector<Vec2> texcoords;
  std::vector<Vec3> normals;
  struct Tri {
    std::array<Corner, 3> corners;
    std::size_t line;
  };
  std::vector<Tri> tris;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto& kw = tok[0];
    if (kw == "v") {
      if (tok.size() < 4) parse_error(line_no, "vertex needs three coordinates");
      positions.emplace_back(parse_double(tok[1], line_no), parse_double(tok[2], line_no),
                             parse_double(tok[3], line_no));
    } else if (kw == "vt") {
      if (tok.size() < 3) parse_error(line_no, "texture coordinate needs u and v");
      texcoords.emplace_back(parse_double(tok[1], line_no), parse_double(tok[2], line_no));
    } else if (kw == "vn") {
      if (tok.size() < 4) parse_error(line_no, "normal needs three components");
      normals.emplace_back(parse_double(tok[1], line_no), parse_double(tok[2], line_no),
                           parse_double(tok[3], line_no));
    } else if (kw == "f") {
      if (tok.size() < 4) parse_error(line_no, "face needs at least three corners");
      std::vector<Corner> corners;
      for (std::size_t i = 1; i < tok.size(); ++i) corners.push_back(parse_corner(tok[i], line_no));
      for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
        tris.push_back({{corners[0], corners[i], corners[i + 1]}, line_no});
      }
    }
    if (end == text.size()) break;
  }

  MeshSurface mesh;
  mesh.vertices = std::move(positions);
  bool all_uv = !tris.empty();
  for (const auto& t : tris) {
    for (const auto& c : t.corners) all_uv = all_uv && c.vt != 0;
  }
  for (const auto& t : tris) {
    std::array<std::uint32_t, 3> face{};
    std::array<Vec2, 3> uv{};
    Vec3 vn_sum = Vec3::Zero();
    bool all_vn = true;
    for (int k = 0; k < 3; ++k) {
      const auto& c = t.corners[k];
      face[k] = resolve(c.v, mesh.vertices.size(), t.line, "vertex");
      if (c.vt != 0) uv[k] = texcoords[resolve(c.vt, texcoords.size(), t.line, "texture")];
      if (c.vn != 0) {
        vn_sum += normals[resolve(c.vn, normals.size(), t.line, "normal")];
      } else {
        all_vn = false;
      }
    }
    const Vec3& a = mesh.vertices[face[0]];
    Vec3 n = (mesh.vertices[face[1]] - a).cross(mesh.vertices[face[2]] - a);
    if (all_vn && vn_sum.norm() > 1e-12) n = vn_sum;
    n = n.norm() > 0.0 ? Vec3(n.normalized()) : Vec3(0.0, 0.0, 1.0);
    mesh.faces.push_back(face);
    mesh.face_normals.push_back(n);
    if (all_uv) mesh.face_uvs.push_back(uv);
  }
  return mesh;
}

MeshSurface read_obj(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open OBJ '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_obj(ss.str());
}

std::string write_obj(const MeshSurface& mesh, std::string_view material_library,
                      std::string_view material) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  if (!material_library.empty()) out << "mtllib " << material_library << '\n';
  for (const auto& v : mesh.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& uv : mesh.face_uvs) {
    for (const auto& t : uv) out << "vt " << t.x() << ' ' << t.y() << '\n';
  }
  for (const auto& n : mesh.face_normals) out << "vn " << n.x() << ' ' << n.y() << ' ' << n.z() << '\n';
  if (!material.empty()) out << "usemtl " << material << '\n';
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    out << 'f';
    for (int k = 0; k < 3; ++k) {
      out << ' ' << mesh.faces[f][k] + 1 << '/';
      if (mesh.has_uvs()) out << 3 * f + k + 1;
      out << '/' << f + 1;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace selgraph
