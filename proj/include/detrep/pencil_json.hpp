#pragma once

// JSON (de)serialization of pencils.  Schema:
//
// {
//   "construction": "grenet", "m": 3, "n": 7, "sign": 1,
//   "scaling_exponent": 4, "expected_factor": 1,
//   "layout": [{"label": "level0", "dim": 1}, ...],
//   "constant": [[0,0,...], ...],               // n x n integers
//   "linear": [{"row": 0, "col": 4, "var": [3, 3], "coeff": 1}, ...]
// }
//
// Rows and columns are 0-based, variable indices 1-based.  Integers that fit
// in 53 bits are emitted as JSON numbers, anything larger as decimal strings
// (import accepts both everywhere an integer is expected).

#include <json.hpp>

#include <cstdint>
#include <string>

#include "detrep/constructions.hpp"
#include "detrep/pencil.hpp"

namespace detrep {

using json = nlohmann::ordered_json;

inline json json_int(const Int& v) {
  static const Int lim = pow_int(2, 53);
  if (v < lim && v > -lim) return json(v.get_si());
  return json(v.get_str());
}

inline Int int_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(path + ": not a decimal integer string");
    }
  }
  throw std::invalid_argument(path + ": expected an integer or decimal string");
}

inline json pencil_to_json(const PencilMatrix& p) {
  json j;
  j["construction"] = p.construction;
  j["m"] = p.m;
  j["n"] = p.n;
  j["sign"] = p.sign;
  j["scaling_exponent"] = p.scaling_exponent;
  j["expected_factor"] = json_int(p.expected_factor);
  j["layout"] = json::array();
  for (auto& b : p.layout.blocks) j["layout"].push_back({{"label", b.label}, {"dim", b.dim}});
  j["constant"] = json::array();
  for (int i = 0; i < p.n; ++i) {
    json row = json::array();
    for (int k = 0; k < p.n; ++k) row.push_back(json_int(p.at(i, k).constant()));
    j["constant"].push_back(std::move(row));
  }
  j["linear"] = json::array();
  for (int i = 0; i < p.n; ++i)
    for (int k = 0; k < p.n; ++k)
      for (auto& t : p.at(i, k).terms())
        j["linear"].push_back({{"row", i},
                               {"col", k},
                               {"var", {t.var.up, t.var.lo}},
                               {"coeff", json_int(t.coeff)}});
  return j;
}

// Rebuilds the construction-specific metadata (argument shape, target,
// cyclic levels) from the construction name; the entry data comes from the
// JSON document.  Unknown construction names are rejected.
inline PencilMatrix pencil_from_json(const json& j) {
  auto need = [&](const json& o, const char* key, const std::string& path) -> const json& {
    if (!o.contains(key))
      throw std::invalid_argument(path + ": missing field '" + key + "'");
    return o.at(key);
  };
  require(j.is_object(), "pencil: document is not an object");
  std::string name = need(j, "construction", "pencil").get<std::string>();
  int m = need(j, "m", "pencil").get<int>();

  PencilMatrix p;
  if (name == "grenet") {
    // sign tells the two grenet variants apart
    int sign = need(j, "sign", "pencil").get<int>();
    p = grenet(m, sign == 1);
  } else if (name == "regular-det") {
    p = regular_det(m);
  } else if (name == "equivariant-perm") {
    p = equivariant_perm(m);
  } else if (name == "equivariant-det") {
    p = equivariant_det(m);
  } else if (name == "quadric-half") {
    p = quadric_half(m);
  } else if (name == "quadric-full") {
    p = quadric_full(m);
  } else {
    throw std::invalid_argument("pencil.construction: unknown construction '" + name +
                                "'");
  }

  int n = need(j, "n", "pencil").get<int>();
  if (n != p.n)
    throw std::invalid_argument("pencil.n: " + std::to_string(n) +
                                " does not match construction size " +
                                std::to_string(p.n));
  int sign = need(j, "sign", "pencil").get<int>();
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("pencil.sign: must be +1 or -1");
  p.sign = sign;
  p.scaling_exponent = need(j, "scaling_exponent", "pencil").get<int>();
  p.expected_factor = int_from_json(need(j, "expected_factor", "pencil"),
                                    "pencil.expected_factor");

  const json& layout = need(j, "layout", "pencil");
  if (!layout.is_array() || layout.size() != p.layout.blocks.size())
    throw std::invalid_argument("pencil.layout: expected " +
                                std::to_string(p.layout.blocks.size()) + " blocks");
  for (std::size_t k = 0; k < layout.size(); ++k) {
    std::string path = "pencil.layout[" + std::to_string(k) + "]";
    int dim = need(layout[k], "dim", path).get<int>();
    if (dim != p.layout.blocks[k].dim)
      throw std::invalid_argument(path + ".dim: " + std::to_string(dim) +
                                  " does not match construction block of dim " +
                                  std::to_string(p.layout.blocks[k].dim));
    p.layout.blocks[k].label = need(layout[k], "label", path).get<std::string>();
  }

  // Entries are taken from the document, not from the reconstructed pencil.
  p.init_entries();
  const json& constant = need(j, "constant", "pencil");
  if (!constant.is_array() || static_cast<int>(constant.size()) != p.n)
    throw std::invalid_argument("pencil.constant: expected " + std::to_string(p.n) +
                                " rows");
  for (int i = 0; i < p.n; ++i) {
    const json& row = constant[i];
    std::string path = "pencil.constant[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != p.n)
      throw std::invalid_argument(path + ": expected " + std::to_string(p.n) +
                                  " entries");
    for (int k = 0; k < p.n; ++k) {
      Int v = int_from_json(row[k], path + "[" + std::to_string(k) + "]");
      if (v != 0) p.at(i, k).add_constant(v);
    }
  }
  const json& linear = need(j, "linear", "pencil");
  if (!linear.is_array())
    throw std::invalid_argument("pencil.linear: expected an array");
  for (std::size_t e = 0; e < linear.size(); ++e) {
    std::string path = "pencil.linear[" + std::to_string(e) + "]";
    const json& t = linear[e];
    int row = need(t, "row", path).get<int>();
    int col = need(t, "col", path).get<int>();
    if (row < 0 || row >= p.n || col < 0 || col >= p.n)
      throw std::invalid_argument(path + ": row/col out of range");
    const json& var = need(t, "var", path);
    if (!var.is_array() || var.size() != 2)
      throw std::invalid_argument(path + ".var: expected [up, lo]");
    Variable v{var[0].get<int>(), var[1].get<int>()};
    if (v.up < 1 || v.up > p.arg_rows || v.lo < 1 || v.lo > p.arg_cols)
      throw std::invalid_argument(path + ".var: index outside the argument shape");
    Int coeff = int_from_json(need(t, "coeff", path), path + ".coeff");
    if (coeff == 0) throw std::invalid_argument(path + ".coeff: zero coefficient");
    p.at(row, col).add_term(v, coeff);
  }
  p.check_invariants();
  return p;
}

inline std::string pencil_to_string(const PencilMatrix& p, int indent = -1) {
  return pencil_to_json(p).dump(indent) + (indent >= 0 ? "\n" : "");
}

inline PencilMatrix pencil_from_string(const std::string& s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("pencil: JSON parse error: ") + e.what());
  }
  return pencil_from_json(j);
}

}  // namespace detrep
