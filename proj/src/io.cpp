#include <nccr/error.hpp>
#include <nccr/io.hpp>

#include <algorithm>

namespace nccr {

Json to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str());
}

Json to_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const RatVector& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        if (x.get_den() == 1) a.push_back(to_json(Int(x.get_num())));
        else a.push_back(x.get_str());
    }
    return a;
}

Json to_json(const std::vector<IntVector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

Json to_json(const Fan& f) {
    Json j;
    j["dim"] = f.dim;
    j["rays"] = to_json(f.rays);
    Json cones = Json::array();
    for (const auto& c : f.max_cones) cones.push_back(c);
    j["max_cones"] = cones;
    return j;
}

Json to_json(const AbelianGroup& g) {
    Json j;
    j["free_rank"] = g.free_rank;
    j["torsion"] = to_json(g.torsion);
    return j;
}

Json to_json(const DivisorClass& c) {
    Json j;
    j["free"] = to_json(c.free);
    j["torsion"] = to_json(c.torsion);
    return j;
}

Json to_json(const CohomologyTable& t) { return Json(t.dims); }

Json to_json(const LineBundleCollection& c) {
    Json j;
    j["provenance"] = to_string(c.provenance);
    if (!c.base_provenance.empty()) j["base_provenance"] = c.base_provenance;
    j["generation_assumed_by"] = c.generation_assumed_by;
    if (c.embedding) {
        std::vector<IntVector> cols;
        for (std::size_t i = 0; i < c.embedding->basis.cols(); ++i) cols.push_back(c.embedding->basis.column(i));
        j["sublattice_basis"] = to_json(cols);
    }
    Json members = Json::array();
    for (const auto& m : c.members) {
        Json e;
        e["weil"] = to_json(m.weil);
        e["class"] = to_json(m.cls);
        if (m.character) e["character"] = to_json(*m.character);
        members.push_back(e);
    }
    j["members"] = members;
    return j;
}

Int int_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_number_unsigned()) {
        auto u = j.get<unsigned long>();
        return Int(std::to_string(u));
    }
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        Int x;
        if (!s.empty() && x.set_str(s, 10) == 0) return x;
    }
    fail(ErrorCode::Parse, "field " + where + ": expected an integer");
}

IntVector int_vector_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(ErrorCode::Parse, "field " + where + ": expected an array");
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Fan fan_from_json(const Json& j) {
    if (!j.is_object()) fail(ErrorCode::Parse, "fan document must be an object");
    for (const char* key : {"dim", "rays", "max_cones"})
        if (!j.contains(key)) fail(ErrorCode::Parse, std::string("field ") + key + ": missing");
    if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer())
        fail(ErrorCode::Parse, "field dim: expected an integer");
    long dim = j["dim"].get<long>();
    if (dim < 1) fail(ErrorCode::Parse, "field dim: must be positive");
    std::vector<IntVector> rays;
    if (!j["rays"].is_array()) fail(ErrorCode::Parse, "field rays: expected an array");
    for (std::size_t i = 0; i < j["rays"].size(); ++i) {
        rays.push_back(int_vector_from_json(j["rays"][i], "rays[" + std::to_string(i) + "]"));
        if (rays.back().size() != static_cast<std::size_t>(dim))
            fail(ErrorCode::DimensionMismatch, "rays[" + std::to_string(i) + "] has wrong length");
    }
    std::vector<std::vector<std::size_t>> cones;
    if (!j["max_cones"].is_array()) fail(ErrorCode::Parse, "field max_cones: expected an array");
    for (std::size_t i = 0; i < j["max_cones"].size(); ++i) {
        const auto& c = j["max_cones"][i];
        if (!c.is_array()) fail(ErrorCode::Parse, "field max_cones[" + std::to_string(i) + "]: expected an array");
        std::vector<std::size_t> cone;
        for (const auto& x : c) {
            if (!x.is_number_unsigned()) fail(ErrorCode::Parse, "field max_cones[" + std::to_string(i) + "]: expected ray indices");
            cone.push_back(x.get<std::size_t>());
        }
        cones.push_back(cone);
    }
    return Fan::make(static_cast<std::size_t>(dim), rays, cones);
}

Json parse_json_text(const std::string& bytes) {
    try {
        return Json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1 + static_cast<std::size_t>(
                                   std::count(bytes.begin(), bytes.begin() + static_cast<long>(std::min(e.byte, bytes.size())), '\n'));
        fail(ErrorCode::Parse, "line " + std::to_string(line) + ": " + e.what());
    }
}

PolytopeDocument polytope_document_from_json(const Json& j) {
    if (!j.is_object()) fail(ErrorCode::Parse, "polytope document must be an object");
    if (!j.contains("schema")) fail(ErrorCode::Parse, "field schema: missing");
    if (!j["schema"].is_number_integer() || j["schema"].get<long>() != 1)
        fail(ErrorCode::Parse, "field schema: unsupported version");
    if (!j.contains("vertices")) fail(ErrorCode::Parse, "field vertices: missing");
    const auto& vs = j["vertices"];
    if (!vs.is_array() || vs.empty()) fail(ErrorCode::Parse, "field vertices: expected a non-empty array");
    PolytopeDocument d;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        d.vertices.push_back(int_vector_from_json(vs[i], "vertices[" + std::to_string(i) + "]"));
        if (d.vertices.back().size() != d.vertices.front().size())
            fail(ErrorCode::DimensionMismatch, "vertices[" + std::to_string(i) + "] has " +
                                                   std::to_string(d.vertices.back().size()) + " entries, expected " +
                                                   std::to_string(d.vertices.front().size()));
    }
    if (d.vertices.front().empty()) fail(ErrorCode::DimensionMismatch, "vertices have no coordinates");
    if (j.contains("name")) {
        if (!j["name"].is_string()) fail(ErrorCode::Parse, "field name: expected a string");
        d.name = j["name"].get<std::string>();
    }
    return d;
}

Json to_json(const PolytopeDocument& d) {
    Json j;
    j["schema"] = d.schema;
    j["vertices"] = to_json(d.vertices);
    if (d.name) j["name"] = *d.name;
    return j;
}

ParsedPolytope parse_polytope(const std::string& bytes) {
    PolytopeDocument d = polytope_document_from_json(parse_json_text(bytes));
    HullResult h = convex_hull(d.vertices, d.vertices.front().size());
    ParsedPolytope out{h.polytope, d.name, {}};
    for (const auto& p : h.dropped) out.warnings.push_back("dropped non-vertex point " + to_string(p));
    return out;
}

}  // namespace nccr
