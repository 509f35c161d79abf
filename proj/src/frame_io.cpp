#include "framelab/frame_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "framelab/error.hpp"

namespace framelab {

using nlohmann::json;

json vector_to_json(const Vector& v, Field field) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (field == Field::real) {
      out.push_back(v(i).real());
    } else {
      out.push_back(json::array({v(i).real(), v(i).imag()}));
    }
  }
  return out;
}

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidArgument(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Vector vector_from_json(const json& j, Field field) {
  if (!j.is_array()) throw InvalidArgument("vector must be a JSON array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    const auto k = static_cast<Eigen::Index>(i);
    if (field == Field::real) {
      v(k) = Complex(number(e, "real vector entry"), 0.0);
    } else {
      if (!e.is_array() || e.size() != 2) {
        throw InvalidArgument("complex vector entries must be [re, im] pairs");
      }
      v(k) = Complex(number(e[0], "real part"), number(e[1], "imaginary part"));
    }
  }
  return v;
}

json frame_to_json(const Frame& frame, const json& provenance) {
  json atoms = json::array();
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Atom& a = frame.space().atom(i);
    json atom = {{"weight", a.weight}, {"vector", vector_to_json(frame.vector(i), frame.field())}};
    if (a.label) atom["label"] = *a.label;
    atoms.push_back(std::move(atom));
  }
  json doc = {{"field", to_string(frame.field())}, {"dim", frame.dim()}, {"atoms", std::move(atoms)}};
  if (!provenance.is_null()) doc["provenance"] = provenance;
  return doc;
}

FrameFile frame_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("frame file must be a JSON object");
  if (!doc.contains("field") || !doc["field"].is_string()) {
    throw InvalidArgument("frame file needs a string 'field'");
  }
  const Field field = field_from_string(doc["field"].get<std::string>());
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw InvalidArgument("frame file needs a positive integer 'dim'");
  }
  const auto dim = static_cast<Eigen::Index>(doc["dim"].get<long long>());
  if (!doc.contains("atoms") || !doc["atoms"].is_array() || doc["atoms"].empty()) {
    throw InvalidArgument("frame file needs a nonempty 'atoms' list");
  }
  const json& atoms = doc["atoms"];
  std::vector<double> weights;
  std::vector<std::optional<std::string>> labels;
  Matrix vectors(dim, static_cast<Eigen::Index>(atoms.size()));
  bool any_label = false;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const json& a = atoms[i];
    if (!a.is_object() || !a.contains("weight") || !a.contains("vector")) {
      throw InvalidArgument("atom " + std::to_string(i) + " needs 'weight' and 'vector'");
    }
    weights.push_back(number(a["weight"], "weight"));
    const Vector v = vector_from_json(a["vector"], field);
    if (v.size() != dim) {
      throw InvalidArgument("atom " + std::to_string(i) + " vector has length " +
                            std::to_string(v.size()) + ", expected " + std::to_string(dim));
    }
    vectors.col(static_cast<Eigen::Index>(i)) = v;
    if (a.contains("label")) {
      if (!a["label"].is_string()) throw InvalidArgument("atom label must be a string");
      labels.emplace_back(a["label"].get<std::string>());
      any_label = true;
    } else {
      labels.emplace_back(std::nullopt);
    }
  }
  if (!any_label) labels.clear();
  json provenance = doc.contains("provenance") ? doc["provenance"] : json();
  return {Frame(MeasureSpace(std::move(weights), std::move(labels)), std::move(vectors), field),
          std::move(provenance)};
}

std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

void save_frame(const std::filesystem::path& path, const Frame& frame, const json& provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << canonical_dump(frame_to_json(frame, provenance));
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FrameFile load_frame(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
  return frame_from_json(doc);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

}  // namespace framelab
