#pragma once

#include <nccr/cohomology.hpp>
#include <nccr/fan.hpp>
#include <nccr/polytope.hpp>
#include <nccr/tilting.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nccr {

using Json = nlohmann::ordered_json;

Json to_json(const Int& x);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const std::vector<IntVector>& vs);
Json to_json(const Fan& f);
Json to_json(const AbelianGroup& g);
Json to_json(const DivisorClass& c);
Json to_json(const CohomologyTable& t);
Json to_json(const LineBundleCollection& c);

Int int_from_json(const Json& j, const std::string& where);
IntVector int_vector_from_json(const Json& j, const std::string& where);
Fan fan_from_json(const Json& j);

struct PolytopeDocument {
    int schema = 1;
    std::vector<IntVector> vertices;
    std::optional<std::string> name;
};

struct ParsedPolytope {
    LatticePolytope polytope;
    std::optional<std::string> name;
    std::vector<std::string> warnings;  // dropped non-vertex points
};

// Throws Parse (with line or field) or DimensionMismatch.
Json parse_json_text(const std::string& bytes);
PolytopeDocument polytope_document_from_json(const Json& j);
ParsedPolytope parse_polytope(const std::string& bytes);
Json to_json(const PolytopeDocument& d);

}  // namespace nccr
