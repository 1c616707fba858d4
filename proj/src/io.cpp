#include "gtplateau/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gtplateau/errors.hpp"

namespace gtp {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw ParseError(source + ": " + where + ": " + what);
}

double number_at(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number()) fail(source, where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(source, where, "non-finite coordinate");
  return x;
}

int degree_at(const json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key)) fail(source, std::string("/") + key, "missing degree");
  const json& v = doc[key];
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 64)
    fail(source, std::string("/") + key, "degree must be an integer in [1, 64]");
  return v.get<int>();
}

}  // namespace

ControlNet parse_net_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "byte " << e.byte;
    fail(source, os.str(), e.what());
  }
  if (!doc.is_object()) fail(source, "/", "expected an object");
  const int m = degree_at(doc, "m", source);
  const int n = degree_at(doc, "n", source);

  if (!doc.contains("points") || !doc["points"].is_array()) fail(source, "/points", "missing array");
  const json& pts = doc["points"];
  if (pts.size() != static_cast<std::size_t>(m + 1)) {
    std::ostringstream os;
    os << "expected " << m + 1 << " rows, got " << pts.size();
    fail(source, "/points", os.str());
  }

  const bool has_mask = doc.contains("fixed");
  if (has_mask) {
    const json& f = doc["fixed"];
    if (!f.is_array() || f.size() != static_cast<std::size_t>(m + 1)) fail(source, "/fixed", "expected m+1 rows");
  }

  ControlNet net(m, n);
  for (int i = 0; i <= m; ++i) {
    const std::string row_path = "/points/" + std::to_string(i);
    const json& row = pts[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n + 1)) {
      std::ostringstream os;
      os << "expected " << n + 1 << " points";
      fail(source, row_path, os.str());
    }
    for (int j = 0; j <= n; ++j) {
      const std::string path = row_path + "/" + std::to_string(j);
      const json& p = row[j];
      bool fixed = !p.is_null();
      if (has_mask) {
        const std::string mpath = "/fixed/" + std::to_string(i) + "/" + std::to_string(j);
        const json& mrow = doc["fixed"][i];
        if (!mrow.is_array() || mrow.size() != static_cast<std::size_t>(n + 1))
          fail(source, "/fixed/" + std::to_string(i), "expected n+1 entries");
        if (!mrow[j].is_boolean()) fail(source, mpath, "expected true or false");
        fixed = mrow[j].get<bool>();
        if (fixed && p.is_null()) fail(source, path, "null point marked fixed");
      }
      net.set_fixed(i, j, fixed);
      if (p.is_null()) {
        net.at(i, j) = Vec3::Zero();
        continue;
      }
      if (!p.is_array() || p.size() != 3) fail(source, path, "expected [x, y, z] or null");
      for (int d = 0; d < 3; ++d) net.at(i, j)(d) = number_at(p[d], source, path + "/" + std::to_string(d));
    }
  }
  return net;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return os.str();
}

ControlNet read_net_json(const std::string& path) { return parse_net_json(read_text_file(path), path); }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string net_to_json(const ControlNet& net, bool free_as_null) {
  // Hand-formatted so each point sits on one line; numbers use the shortest round-trip form.
  std::ostringstream os;
  os << "{\n  \"m\": " << net.m() << ",\n  \"n\": " << net.n() << ",\n  \"points\": [\n";
  for (int i = 0; i <= net.m(); ++i) {
    os << "    [";
    for (int j = 0; j <= net.n(); ++j) {
      if (j) os << ", ";
      if (free_as_null && !net.is_fixed(i, j)) {
        os << "null";
        continue;
      }
      const Vec3& p = net.at(i, j);
      os << "[" << format_double(p.x()) << ", " << format_double(p.y()) << ", " << format_double(p.z()) << "]";
    }
    os << "]" << (i < net.m() ? "," : "") << "\n";
  }
  os << "  ],\n  \"fixed\": [\n";
  for (int i = 0; i <= net.m(); ++i) {
    os << "    [";
    for (int j = 0; j <= net.n(); ++j) os << (j ? ", " : "") << (net.is_fixed(i, j) ? "true" : "false");
    os << "]" << (i < net.m() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string mesh_to_obj(const TriangleMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 48 + mesh.triangles.size() * 24);
  for (const auto& v : mesh.vertices)
    out += "v " + format_double(v.x()) + " " + format_double(v.y()) + " " + format_double(v.z()) + "\n";
  for (const auto& t : mesh.triangles)
    out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " + std::to_string(t[2] + 1) + "\n";
  return out;
}

std::string curvature_to_csv(const std::vector<FundamentalForms>& grid) {
  std::string out = "u,v,H,E,F,G\n";
  for (const auto& f : grid)
    out += format_double(f.u) + "," + format_double(f.v) + "," + format_double(f.H) + "," + format_double(f.E) + "," +
           format_double(f.F) + "," + format_double(f.G) + "\n";
  return out;
}

std::string history_to_csv(const std::vector<double>& history) {
  std::string out = "iteration,best_value\n";
  for (std::size_t t = 0; t < history.size(); ++t) out += std::to_string(t) + "," + format_double(history[t]) + "\n";
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("error while writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path);
  }
}

}  // namespace gtp
