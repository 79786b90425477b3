#pragma once

// JSON interchange for every artifact the CLI reads or writes. Parsing is
// strict: malformed files raise DomainError with the offending path.

#include <string>

#include <json.hpp>

#include "apmub/apmub_constructions.hpp"
#include "apmub/block_designs.hpp"
#include "apmub/hadamard.hpp"
#include "apmub/latin_squares.hpp"
#include "apmub/mub_builder.hpp"

namespace apmub {

using Json = nlohmann::json;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json mols_to_json(const MolsSet& set);
MolsSet mols_from_json(const Json& j);

Json design_to_json(const ResolvableDesign& design);
ResolvableDesign design_from_json(const Json& j);

Json scaffold_to_json(const UnitaryScaffold& h);
UnitaryScaffold scaffold_from_json(const Json& j);

Json collection_to_json(const MubCollection& m);
MubCollection collection_from_json(const Json& j);

Json report_to_json(const SpectrumReport& report);

Json plan_to_json(const ConstructionPlan& plan);

Json weighing_to_json(const WeighingMatrix& w);

// FNV-1a 64-bit digest, hex-encoded; used by run manifests to pin outputs.
std::string fnv1a64_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace apmub
