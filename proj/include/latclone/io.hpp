#pragma once

// JSON forms of structures, operations, relations, equation systems and verdicts.
//
//   structure  {"elements": [...], "covers": [[lo, hi], ...]} or
//              {"elements": [...], "meet": [[...], ...]}, optional "kind"
//   operation  {"arity": n, "values": [...], "term": "..."}   ("term" optional)
//   relation   {"arity": h, "tuples": [[...], ...]}           (sorted)
//   system     {"arity": n, "equations": [{"lhs": operation, "rhs": operation}, ...]}
//
// Element references on input may be indices or labels; output uses indices.

#include <optional>
#include <string>

#include <json.hpp>

#include "latclone/eqsol.hpp"
#include "latclone/finlat.hpp"
#include "latclone/funclone.hpp"
#include "latclone/ppqe.hpp"
#include "latclone/sdc.hpp"

namespace latclone {

using Json = nlohmann::ordered_json;

// Parses JSON text, mapping parse errors to BadSpec.
Json parse_json(const std::string& text);

// `kind` overrides the file's "kind" (default lattice).
Structure structure_from_json(const Json& j, std::optional<StructureKind> kind = std::nullopt);
StructureKind structure_kind(const Json& j);
Json to_json(const FiniteLattice& lattice);
Json to_json(const FiniteSemilattice& semilattice);

Json to_json(const OpTable& op);
OpTable op_from_json(const Json& j, std::size_t carrier);

Json to_json(const Relation& rel);
Json tuple_json(std::span<const Elem> tuple);
Relation relation_from_json(const Json& j, std::size_t carrier,
                            const std::vector<std::string>& names = {});

Json to_json(const EquationSystem& system);
EquationSystem system_from_json(const Json& j, std::size_t carrier);

Json to_json(const SdcVerdict& verdict);

}  // namespace latclone
