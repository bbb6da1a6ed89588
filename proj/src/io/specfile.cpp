#include "qtherm/io/specfile.hpp"

#include <cmath>

#include "json.hpp"
#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

using nlohmann::json;

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InvalidInput("spec file: " + where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput("spec file: " + where + " must be finite");
  return x;
}

std::array<double, 3> finite_triple(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3)
    throw InvalidInput("spec file: " + where + " must be an array of 3 numbers");
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) out[i] = finite_number(v[i], where);
  return out;
}

Family family_from_name(const std::string& name) {
  if (name == "rosci") return Family::rosci;
  if (name == "homogeneous") return Family::homogeneous;
  if (name == "wang") return Family::wang;
  if (name == "anisotropic") return Family::anisotropic;
  if (name == "misaligned") return Family::misaligned;
  if (name == "example11") return Family::example11;
  throw InvalidInput("spec file: unknown family \"" + name + "\"");
}

}  // namespace

FamilySpec parse_family_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("spec file: malformed: ") + e.what());
  }
  if (!root.is_object()) throw InvalidInput("spec file: top level must be an object");
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    if (key != "family" && key != "params" && key != "pauli")
      throw InvalidInput("spec file: unknown key \"" + key + "\"");
  }
  const bool has_family = root.contains("family");
  const bool has_pauli = root.contains("pauli");
  if (has_family == has_pauli)
    throw InvalidInput("spec file: exactly one of \"family\" and \"pauli\" is required");

  FamilySpec spec;
  if (has_pauli) {
    if (root.contains("params"))
      throw InvalidInput("spec file: \"params\" requires \"family\"");
    const json& p = root["pauli"];
    if (!p.is_array() || p.size() != 4)
      throw InvalidInput("spec file: \"pauli\" must be a 4x4 array of numbers");
    PauliCoeffs c{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!p[i].is_array() || p[i].size() != 4)
        throw InvalidInput("spec file: \"pauli\" must be a 4x4 array of numbers");
      for (std::size_t j = 0; j < 4; ++j)
        c[i][j] = finite_number(p[i][j], "pauli[" + std::to_string(i) + "][" +
                                             std::to_string(j) + "]");
    }
    spec.family = Family::explicit_;
    spec.c = c;
    return spec;
  }

  if (!root["family"].is_string())
    throw InvalidInput("spec file: \"family\" must be a string");
  spec.family = family_from_name(root["family"].get<std::string>());
  if (root.contains("params")) {
    const json& params = root["params"];
    if (!params.is_object())
      throw InvalidInput("spec file: \"params\" must be an object");
    for (const auto& item : params.items()) {
      const std::string& key = item.key();
      const json& value = item.value();
      if (key == "J")
        spec.j = finite_number(value, "params.J");
      else if (key == "h")
        spec.h = finite_number(value, "params.h");
      else if (key == "gamma")
        spec.gamma = finite_number(value, "params.gamma");
      else if (key == "delta")
        spec.delta = finite_number(value, "params.delta");
      else if (key == "alpha")
        spec.alpha = finite_triple(value, "params.alpha");
      else if (key == "beta")
        spec.beta = finite_triple(value, "params.beta");
      else
        throw InvalidInput("spec file: unknown parameter \"" + key + "\"");
    }
  }
  return spec;
}

PauliHamiltonian parse_spec(const std::string& text) { return build(parse_family_spec(text)); }

std::string serialize_spec(const PauliHamiltonian& h) {
  json rows = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back(h.c[i][j]);
    rows.push_back(row);
  }
  json root;
  root["pauli"] = rows;
  return root.dump();
}

}  // namespace qtherm
