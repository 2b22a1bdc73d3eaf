#include "mbstab/mesh_io.hpp"

#include "mbstab/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mbstab {

using nlohmann::json;

namespace {

std::string position_of(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw ValidationError("field '" + field + "': " + message);
}

const json& require(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) field_error(name, "missing");
  return *it;
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<int>();
}

}  // namespace

MeshData parse_mesh(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ValidationError("malformed JSON at " + position_of(text, byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("malformed mesh file: top level must be an object");

  const int n = as_int(require(doc, "vertices"), "vertices");
  if (n <= 0) field_error("vertices", "must be positive");

  const json& tris = require(doc, "triangles");
  if (!tris.is_array()) field_error("triangles", "expected an array");
  std::vector<Triangle> triangles;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const std::string name = "triangles[" + std::to_string(t) + "]";
    if (!tris[t].is_array() || tris[t].size() != 3) field_error(name, "expected three vertex ids");
    Triangle tri{};
    for (int k = 0; k < 3; ++k) {
      tri[k] = as_int(tris[t][k], name);
      if (tri[k] < 0 || tri[k] >= n) field_error(name, "vertex id " + std::to_string(tri[k]) + " out of range");
    }
    triangles.push_back(tri);
  }

  FieldMode mode = FieldMode::RealValued;
  if (auto it = doc.find("mode"); it != doc.end()) {
    if (*it == "real") {
      mode = FieldMode::RealValued;
    } else if (*it == "circle") {
      mode = FieldMode::CircleValued;
    } else {
      field_error("mode", "expected \"real\" or \"circle\"");
    }
  }

  const json& vals = require(doc, "values");
  if (!vals.is_array()) field_error("values", "expected an array");
  if (static_cast<int>(vals.size()) != n) {
    field_error("values", "has " + std::to_string(vals.size()) + " entries for " + std::to_string(n) + " vertices");
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i].is_number()) field_error("values[" + std::to_string(i) + "]", "expected a number");
    values.push_back(vals[i].get<double>());
  }

  std::map<EdgeKey, int> windings;
  if (auto it = doc.find("windings"); it != doc.end()) {
    if (!it->is_object()) field_error("windings", "expected an object keyed by \"i,j\"");
    for (const auto& [k, w] : it->items()) {
      const std::string name = "windings[\"" + k + "\"]";
      int i = 0;
      int j = 0;
      char comma = 0;
      std::istringstream in(k);
      if (!(in >> i >> comma >> j) || comma != ',' || !in.eof()) field_error(name, "key must be \"i,j\"");
      windings[{i, j}] = as_int(w, name);
    }
  }

  std::vector<std::vector<int>> plateaus;
  if (auto it = doc.find("plateaus"); it != doc.end()) {
    if (!it->is_array()) field_error("plateaus", "expected an array of vertex cycles");
    for (std::size_t p = 0; p < it->size(); ++p) {
      const std::string name = "plateaus[" + std::to_string(p) + "]";
      const json& cycle = (*it)[p];
      if (!cycle.is_array()) field_error(name, "expected an array of vertex ids");
      std::vector<int> ids;
      for (const auto& v : cycle) ids.push_back(as_int(v, name));
      plateaus.push_back(std::move(ids));
    }
  }

  MeshData out;
  out.mesh = SurfaceMesh(n, std::move(triangles));
  out.surface = validate_mesh(out.mesh);
  out.field = Field(mode, std::move(values), std::move(windings), std::move(plateaus));
  validate_field(out.mesh, out.field, out.surface);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

MeshData load_mesh(const std::filesystem::path& path) { return parse_mesh(read_file(path)); }

std::string dump_mesh(const SurfaceMesh& mesh, const Field& field) {
  nlohmann::ordered_json doc;
  doc["vertices"] = mesh.vertex_count();
  doc["triangles"] = mesh.triangles();
  doc["mode"] = field.mode() == FieldMode::RealValued ? "real" : "circle";
  doc["values"] = field.values();
  nlohmann::ordered_json windings = nlohmann::ordered_json::object();
  for (const auto& [k, w] : field.windings()) {
    windings[std::to_string(k.first) + "," + std::to_string(k.second)] = w;
  }
  doc["windings"] = windings;
  doc["plateaus"] = field.plateaus();
  return doc.dump(2) + "\n";
}

void save_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh, const Field& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << dump_mesh(mesh, field);
}

}  // namespace mbstab
