#include "latclone/io.hpp"

#include <algorithm>
#include <cstdint>

#include "latclone/error.hpp"

namespace latclone {

namespace {

std::size_t element_ref(const Json& v, const std::vector<std::string>& names,
                        std::size_t carrier) {
  std::size_t i = 0;
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw Error(Errc::bad_index, "element index must be non-negative");
    i = v.get<std::size_t>();
  } else if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw Error(Errc::bad_spec, "unknown element '" + s + "'");
    i = static_cast<std::size_t>(it - names.begin());
  } else {
    throw Error(Errc::bad_spec, "element reference must be an index or a label");
  }
  if (i >= carrier) throw Error(Errc::bad_index, "element index " + std::to_string(i) + " out of range");
  return i;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::bad_spec, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

Json table_rows(const BinaryTable& t) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < t.size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < t.size(); ++y) row.push_back(t(static_cast<Elem>(x), static_cast<Elem>(y)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::bad_spec, std::string("invalid JSON: ") + e.what());
  }
}

StructureKind structure_kind(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) return StructureKind::lattice;
  const auto& k = j.at("kind");
  if (k == "lattice") return StructureKind::lattice;
  if (k == "semilattice") return StructureKind::semilattice;
  throw Error(Errc::bad_spec, "kind must be \"lattice\" or \"semilattice\"");
}

Structure structure_from_json(const Json& j, std::optional<StructureKind> kind) {
  StructureSpec spec;
  const auto& elements = field(j, "elements");
  if (!elements.is_array()) throw Error(Errc::bad_spec, "'elements' must be an array");
  for (const auto& e : elements) {
    if (!e.is_string()) throw Error(Errc::bad_spec, "element labels must be strings");
    spec.labels.push_back(e.get<std::string>());
  }
  const auto n = spec.labels.size();
  if (j.contains("covers")) {
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw Error(Errc::bad_spec, "a cover is a pair [lo, hi]");
      spec.covers.emplace_back(element_ref(c[0], spec.labels, n), element_ref(c[1], spec.labels, n));
    }
  }
  if (j.contains("meet")) {
    std::vector<std::vector<std::size_t>> rows;
    const auto& m = j.at("meet");
    if (!m.is_array()) throw Error(Errc::bad_spec, "'meet' must be an array of rows");
    for (const auto& r : m) {
      if (!r.is_array()) throw Error(Errc::bad_spec, "'meet' must be an array of rows");
      std::vector<std::size_t> row;
      for (const auto& v : r) row.push_back(element_ref(v, spec.labels, n));
      rows.push_back(std::move(row));
    }
    spec.meet = std::move(rows);
  }
  if (j.contains("sizeCap")) spec.size_cap = j.at("sizeCap").get<std::size_t>();
  return construct(spec, kind.value_or(structure_kind(j)));
}

Json to_json(const FiniteLattice& lattice) {
  return Json{{"kind", "lattice"}, {"elements", lattice.names()}, {"meet", table_rows(lattice.meet_table())}};
}

Json to_json(const FiniteSemilattice& semilattice) {
  return Json{{"kind", "semilattice"},
              {"elements", semilattice.names()},
              {"meet", table_rows(semilattice.meet_table())}};
}

Json to_json(const OpTable& op) {
  Json j{{"arity", op.arity()}, {"values", std::vector<int>(op.values().begin(), op.values().end())}};
  if (!op.provenance().empty()) j["term"] = op.provenance();
  return j;
}

OpTable op_from_json(const Json& j, std::size_t carrier) {
  const auto arity = field(j, "arity").get<std::size_t>();
  std::vector<Elem> values;
  for (const auto& v : field(j, "values")) values.push_back(static_cast<Elem>(element_ref(v, {}, carrier)));
  std::string term = j.contains("term") ? j.at("term").get<std::string>() : "";
  if (values.size() != power_size(carrier, arity)) {
    throw Error(Errc::arity_mismatch, "operation table has the wrong number of values");
  }
  return OpTable(arity, carrier, std::move(values), std::move(term));
}

Json tuple_json(std::span<const Elem> tuple) {
  Json t = Json::array();
  for (auto e : tuple) t.push_back(static_cast<int>(e));
  return t;
}

Json to_json(const Relation& rel) {
  Json tuples = Json::array();
  for (std::size_t i = 0; i < rel.size(); ++i) tuples.push_back(tuple_json(rel.row(i)));
  return Json{{"arity", rel.arity()}, {"tuples", tuples}};
}

Relation relation_from_json(const Json& j, std::size_t carrier,
                            const std::vector<std::string>& names) {
  const auto& tuples = field(j, "tuples");
  if (!tuples.is_array()) throw Error(Errc::bad_spec, "'tuples' must be an array");
  std::optional<std::size_t> arity;
  if (j.contains("arity")) arity = j.at("arity").get<std::size_t>();
  std::vector<Tuple> out;
  for (const auto& t : tuples) {
    if (!t.is_array()) throw Error(Errc::bad_spec, "a tuple must be an array");
    if (!arity) arity = t.size();
    if (t.size() != *arity) throw Error(Errc::arity_mismatch, "tuple length differs from arity");
    Tuple tuple;
    for (const auto& v : t) tuple.push_back(static_cast<Elem>(element_ref(v, names, carrier)));
    out.push_back(std::move(tuple));
  }
  if (!arity || *arity == 0) throw Error(Errc::bad_spec, "relation arity must be positive");
  return Relation(*arity, carrier, out);
}

Json to_json(const EquationSystem& system) {
  Json eqs = Json::array();
  for (const auto& e : system.equations) eqs.push_back(Json{{"lhs", to_json(e.lhs)}, {"rhs", to_json(e.rhs)}});
  return Json{{"arity", system.arity}, {"equations", eqs}};
}

EquationSystem system_from_json(const Json& j, std::size_t carrier) {
  EquationSystem system;
  system.arity = field(j, "arity").get<std::size_t>();
  for (const auto& e : field(j, "equations")) {
    system.equations.push_back({op_from_json(field(e, "lhs"), carrier), op_from_json(field(e, "rhs"), carrier)});
  }
  system.validate(carrier);
  return system;
}

Json to_json(const SdcVerdict& verdict) {
  Json j{{"holds", verdict.holds}, {"route", verdict.route}};
  if (verdict.witness) j["witness"] = to_json(*verdict.witness);
  if (verdict.gap_tuple) j["gapTuple"] = tuple_json(*verdict.gap_tuple);
  j["qeSamples"] = verdict.qe_samples;
  j["seed"] = verdict.seed;
  j["verified"] = verdict.verified;
  return j;
}

}  // namespace latclone
