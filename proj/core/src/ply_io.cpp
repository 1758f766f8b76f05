#include "gbake/ply_io.hpp"

#include "gbake/error.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "PLY reader assumes a little-endian host");

namespace gbake {

namespace {

enum class ScalarType { i8, u8, i16, u16, i32, u32, f32, f64 };

std::optional<ScalarType> parse_type(const std::string &name) {
  static const std::unordered_map<std::string, ScalarType> types = {
      {"char", ScalarType::i8},     {"int8", ScalarType::i8},     {"uchar", ScalarType::u8},
      {"uint8", ScalarType::u8},    {"short", ScalarType::i16},   {"int16", ScalarType::i16},
      {"ushort", ScalarType::u16},  {"uint16", ScalarType::u16},  {"int", ScalarType::i32},
      {"int32", ScalarType::i32},   {"uint", ScalarType::u32},    {"uint32", ScalarType::u32},
      {"float", ScalarType::f32},   {"float32", ScalarType::f32}, {"double", ScalarType::f64},
      {"float64", ScalarType::f64},
  };
  const auto it = types.find(name);
  if (it == types.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t type_size(ScalarType t) {
  switch (t) {
  case ScalarType::i8:
  case ScalarType::u8:
    return 1;
  case ScalarType::i16:
  case ScalarType::u16:
    return 2;
  case ScalarType::i32:
  case ScalarType::u32:
  case ScalarType::f32:
    return 4;
  case ScalarType::f64:
    return 8;
  }
  return 0;
}

template <typename T> double read_as(const unsigned char *p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return static_cast<double>(v);
}

double read_scalar(ScalarType t, const unsigned char *p) {
  switch (t) {
  case ScalarType::i8:
    return read_as<std::int8_t>(p);
  case ScalarType::u8:
    return read_as<std::uint8_t>(p);
  case ScalarType::i16:
    return read_as<std::int16_t>(p);
  case ScalarType::u16:
    return read_as<std::uint16_t>(p);
  case ScalarType::i32:
    return read_as<std::int32_t>(p);
  case ScalarType::u32:
    return read_as<std::uint32_t>(p);
  case ScalarType::f32:
    return read_as<float>(p);
  case ScalarType::f64:
    return read_as<double>(p);
  }
  return 0.0;
}

struct Property {
  std::string name;
  ScalarType type;
  std::size_t offset;
  bool is_list = false;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
  std::size_t stride = 0;
  bool has_list = false;

  const Property *find(const std::string &prop) const {
    for (const auto &p : properties) {
      if (p.name == prop) {
        return &p;
      }
    }
    return nullptr;
  }
};

struct Header {
  std::vector<Element> elements;
  std::size_t data_offset = 0;
};

Header parse_header(const std::string &bytes) {
  Header header;
  std::size_t pos = 0;
  bool saw_format = false;
  auto next_line = [&]() -> std::optional<std::string> {
    if (pos >= bytes.size()) {
      return std::nullopt;
    }
    const auto nl = bytes.find('\n', pos);
    if (nl == std::string::npos) {
      return std::nullopt;
    }
    std::string line = bytes.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    return line;
  };

  const auto magic = next_line();
  if (!magic || *magic != "ply") {
    throw FormatError("not a PLY file (missing 'ply' magic)");
  }
  while (true) {
    const auto line = next_line();
    if (!line) {
      throw FormatError("PLY header is not terminated by end_header");
    }
    std::istringstream in(*line);
    std::string keyword;
    in >> keyword;
    if (keyword == "end_header") {
      break;
    }
    if (keyword == "format") {
      std::string encoding;
      in >> encoding;
      if (encoding != "binary_little_endian") {
        throw FormatError("unsupported PLY encoding '" + encoding +
                          "' (only binary_little_endian is supported)");
      }
      saw_format = true;
    } else if (keyword == "element") {
      Element e;
      long long count = -1;
      in >> e.name >> count;
      if (e.name.empty() || count < 0) {
        throw FormatError("malformed PLY element line: " + *line);
      }
      e.count = static_cast<std::size_t>(count);
      header.elements.push_back(std::move(e));
    } else if (keyword == "property") {
      if (header.elements.empty()) {
        throw FormatError("PLY property declared before any element");
      }
      Element &e = header.elements.back();
      std::string type_name;
      in >> type_name;
      if (type_name == "list") {
        std::string count_type, item_type, name;
        in >> count_type >> item_type >> name;
        e.properties.push_back({name, ScalarType::u8, 0, true});
        e.has_list = true;
        continue;
      }
      std::string name;
      in >> name;
      const auto type = parse_type(type_name);
      if (!type || name.empty()) {
        throw FormatError("malformed PLY property line: " + *line);
      }
      e.properties.push_back({name, *type, e.stride, false});
      e.stride += type_size(*type);
    } else if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) {
      continue;
    } else {
      throw FormatError("unknown PLY header keyword '" + keyword + "'");
    }
  }
  if (!saw_format) {
    throw FormatError("PLY header lacks a format line");
  }
  header.data_offset = pos;
  return header;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open PLY file", path.string());
  }
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace

GaussianScene load_ply(const std::filesystem::path &path) {
  const std::string bytes = read_file(path);
  if (bytes.empty()) {
    throw FormatError("empty PLY file: " + path.string());
  }
  const Header header = parse_header(bytes);

  std::size_t offset = header.data_offset;
  const Element *vertex = nullptr;
  for (const auto &e : header.elements) {
    if (e.name == "vertex") {
      vertex = &e;
      break;
    }
    if (e.has_list) {
      throw FormatError("cannot skip PLY element '" + e.name + "' with list properties");
    }
    offset += e.count * e.stride;
  }
  if (vertex == nullptr) {
    throw FormatError("PLY file has no 'vertex' element");
  }
  if (vertex->has_list) {
    throw FormatError("PLY vertex element must not contain list properties");
  }

  auto require = [&](const std::string &name) -> const Property & {
    const Property *p = vertex->find(name);
    if (p == nullptr) {
      throw FormatError("PLY vertex element is missing required property '" + name + "'");
    }
    return *p;
  };

  const Property *pos[3] = {&require("x"), &require("y"), &require("z")};
  const Property *dc[3] = {&require("f_dc_0"), &require("f_dc_1"), &require("f_dc_2")};
  const Property *opacity = &require("opacity");
  const Property *scale[3] = {&require("scale_0"), &require("scale_1"), &require("scale_2")};
  const Property *rot[4] = {&require("rot_0"), &require("rot_1"), &require("rot_2"),
                            &require("rot_3")};

  std::size_t rest_count = 0;
  while (vertex->find("f_rest_" + std::to_string(rest_count)) != nullptr) {
    ++rest_count;
  }
  int degree = -1;
  for (int d = 0; d <= kMaxShDegree; ++d) {
    if (rest_count == static_cast<std::size_t>(3 * (sh_basis_count(d) - 1))) {
      degree = d;
    }
  }
  if (degree < 0) {
    throw FormatError("unsupported number of f_rest properties: " + std::to_string(rest_count) +
                      " (expected 0, 9, 24 or 45)");
  }
  const std::size_t rest_per_channel = rest_count / 3;
  std::vector<const Property *> rest(rest_count);
  for (std::size_t k = 0; k < rest_count; ++k) {
    rest[k] = &require("f_rest_" + std::to_string(k));
  }

  if (offset + vertex->count * vertex->stride > bytes.size()) {
    throw FormatError("PLY file truncated: expected " + std::to_string(vertex->count) +
                      " vertices");
  }

  const auto *base = reinterpret_cast<const unsigned char *>(bytes.data()) + offset;
  std::vector<GaussianParticle> particles;
  particles.reserve(vertex->count);
  std::size_t culled = 0;

  for (std::size_t v = 0; v < vertex->count; ++v) {
    const unsigned char *row = base + v * vertex->stride;
    auto get = [&](const Property *p) {
      const double value = read_scalar(p->type, row + p->offset);
      if (!std::isfinite(value)) {
        throw DataError("non-finite value in property '" + p->name + "'", v);
      }
      return value;
    };

    GaussianParticle particle;
    for (int a = 0; a < 3; ++a) {
      particle.mean[a] = get(pos[a]);
      particle.scale[a] = std::exp(get(scale[a]));
    }
    particle.opacity = logistic(get(opacity));
    Quat q(get(rot[0]), get(rot[1]), get(rot[2]), get(rot[3]));
    const double qn = q.norm();
    if (!(qn > 0.0)) {
      throw DataError("zero-length rotation quaternion", v);
    }
    particle.rotation = Quat(q.coeffs() / qn);
    if (!particle.scale.allFinite() || !(particle.scale.array() > 0.0).all()) {
      throw DataError("scale overflows after exp activation", v);
    }

    for (int c = 0; c < 3; ++c) {
      particle.sh[c * kShCoeffsPerChannel] = static_cast<float>(get(dc[c]));
      for (std::size_t k = 0; k < rest_per_channel; ++k) {
        particle.sh[c * kShCoeffsPerChannel + 1 + k] =
            static_cast<float>(get(rest[c * rest_per_channel + k]));
      }
    }

    if (particle.opacity < kLoadOpacityFloor) {
      ++culled;
      continue;
    }
    particles.push_back(particle);
  }

  if (particles.empty()) {
    throw EmptySceneError("scene has no particles after opacity culling (" +
                          std::to_string(culled) + " culled): " + path.string());
  }
  GaussianScene scene(std::move(particles), degree);
  scene.set_culled_on_load(culled);
  return scene;
}

void save_ply(const std::filesystem::path &path, std::span<const GaussianParticle> particles,
              int sh_degree) {
  if (sh_degree < 0 || sh_degree > kMaxShDegree) {
    throw DomainError("sh degree must be in [0, 3]");
  }
  const int rest_per_channel = sh_basis_count(sh_degree) - 1;
  const int rest_count = 3 * rest_per_channel;

  std::ostringstream header;
  header << "ply\nformat binary_little_endian 1.0\n";
  header << "element vertex " << particles.size() << "\n";
  for (const char *name : {"x", "y", "z", "nx", "ny", "nz", "f_dc_0", "f_dc_1", "f_dc_2"}) {
    header << "property float " << name << "\n";
  }
  for (int k = 0; k < rest_count; ++k) {
    header << "property float f_rest_" << k << "\n";
  }
  header << "property float opacity\n";
  for (const char *name :
       {"scale_0", "scale_1", "scale_2", "rot_0", "rot_1", "rot_2", "rot_3"}) {
    header << "property float " << name << "\n";
  }
  header << "end_header\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open PLY file for writing", path.string());
  }
  const std::string text = header.str();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));

  std::vector<float> row;
  for (const auto &p : particles) {
    row.clear();
    for (int a = 0; a < 3; ++a) {
      row.push_back(static_cast<float>(p.mean[a]));
    }
    row.insert(row.end(), {0.0f, 0.0f, 0.0f});
    for (int c = 0; c < 3; ++c) {
      row.push_back(p.sh[c * kShCoeffsPerChannel]);
    }
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < rest_per_channel; ++k) {
        row.push_back(p.sh[c * kShCoeffsPerChannel + 1 + k]);
      }
    }
    const double o = std::clamp(p.opacity, 1e-7, 1.0 - 1e-7);
    row.push_back(static_cast<float>(std::log(o / (1.0 - o))));
    for (int a = 0; a < 3; ++a) {
      row.push_back(static_cast<float>(std::log(p.scale[a])));
    }
    row.insert(row.end(), {static_cast<float>(p.rotation.w()), static_cast<float>(p.rotation.x()),
                           static_cast<float>(p.rotation.y()), static_cast<float>(p.rotation.z())});
    out.write(reinterpret_cast<const char *>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) {
    throw IoError("failed writing PLY file", path.string());
  }
}

} // namespace gbake
