// Profile document parsing: one JSON document declares materials, cavities,
// regions, boundary faces, junctions and panel parameters (format reference
// in the README).
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "framesph/error.hpp"
#include "framesph/geometry.hpp"

namespace framesph::geometry {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &msg) { throw Error("geometry", "parse error: " + msg); }

void check_keys(const json &obj, const std::string &where,
                std::initializer_list<const char *> allowed) {
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *k : allowed) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) fail("unknown key '" + item.key() + "' in " + where);
    }
}

double get_number(const json &obj, const std::string &where, const char *key) {
    if (!obj.contains(key)) fail(where + ": missing '" + std::string(key) + "'");
    const auto &v = obj.at(key);
    if (!v.is_number()) fail(where + ": '" + std::string(key) + "' must be a number");
    return v.get<double>();
}

Point2 parse_point(const json &v, const std::string &where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(where + ": expected a point [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Polygon parse_polygon(const json &v, const std::string &where) {
    if (!v.is_array() || v.size() < 3) fail(where + ": polygon needs at least 3 points");
    Polygon poly;
    poly.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        poly.push_back(parse_point(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return poly;
}

cavity::CavitySpec parse_cavity(const std::string &name, const json &obj) {
    const std::string where = "cavities." + name;
    if (!obj.is_object()) fail(where + ": expected an object");
    check_keys(obj, where, {"rect", "polygon", "gap_width", "heat_flow", "ventilates_to"});

    cavity::CavitySpec spec;
    spec.name = name;
    if (obj.contains("rect") == obj.contains("polygon")) {
        fail(where + ": declare exactly one of 'rect' or 'polygon'");
    }
    if (obj.contains("rect")) {
        const auto &rect = obj.at("rect");
        check_keys(rect, where + ".rect", {"b", "d"});
        spec.geometry = cavity::Rectangle{get_number(rect, where + ".rect", "b"),
                                          get_number(rect, where + ".rect", "d")};
    } else {
        const Polygon poly = parse_polygon(obj.at("polygon"), where + ".polygon");
        double min_x = poly[0].x, max_x = poly[0].x, min_y = poly[0].y, max_y = poly[0].y;
        for (const auto &p : poly) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        std::string heat_flow = "x";
        if (obj.contains("heat_flow")) {
            heat_flow = obj.at("heat_flow").get<std::string>();
            if (heat_flow != "x" && heat_flow != "y") fail(where + ": heat_flow must be 'x' or 'y'");
        }
        cavity::PolygonSummary summary;
        summary.area = std::abs(signed_area(poly));
        summary.depth_extent = heat_flow == "x" ? max_x - min_x : max_y - min_y;
        summary.width_extent = heat_flow == "x" ? max_y - min_y : max_x - min_x;
        spec.geometry = summary;
    }
    if (obj.contains("gap_width")) {
        spec.gap_width = get_number(obj, where, "gap_width");
        if (spec.gap_width < 0.0) fail(where + ": gap_width must be non-negative");
    }
    if (obj.contains("ventilates_to")) {
        const std::string side = obj.at("ventilates_to").get<std::string>();
        if (side != "internal" && side != "external") {
            fail(where + ": ventilates_to must be 'internal' or 'external'");
        }
        spec.ventilates_to = side;
    }
    return spec;
}

BoundaryFace parse_face(const json &obj, const std::string &where) {
    if (!obj.is_object()) fail(where + ": expected an object");
    check_keys(obj, where, {"from", "to", "kind", "ambient", "resistance"});
    BoundaryFace face;
    if (!obj.contains("from") || !obj.contains("to")) fail(where + ": needs 'from' and 'to'");
    face.a = parse_point(obj.at("from"), where + ".from");
    face.b = parse_point(obj.at("to"), where + ".to");
    if (!obj.contains("kind")) fail(where + ": missing 'kind'");
    const std::string kind = obj.at("kind").get<std::string>();
    if (kind == "internal") {
        face.kind = FaceKind::internal_convection;
        face.surface_resistance = internal_plane_resistance;
    } else if (kind == "external") {
        face.kind = FaceKind::external_convection;
        face.surface_resistance = external_plane_resistance;
    } else if (kind == "adiabatic") {
        face.kind = FaceKind::adiabatic;
    } else {
        fail(where + ": kind must be 'internal', 'external' or 'adiabatic'");
    }
    if (face.kind == FaceKind::adiabatic) {
        if (obj.contains("ambient") || obj.contains("resistance")) {
            fail(where + ": adiabatic faces take neither 'ambient' nor 'resistance'");
        }
    } else {
        if (!obj.contains("ambient")) fail(where + ": convective faces need 'ambient'");
        face.ambient = get_number(obj, where, "ambient");
        if (obj.contains("resistance")) {
            face.surface_resistance = get_number(obj, where, "resistance");
        }
    }
    return face;
}

ProfileSpec parse_document(const json &doc) {
    ProfileSpec profile;
    std::map<std::string, int> material_index;
    std::map<std::string, int> cavity_index;

    if (doc.contains("materials")) {
        if (!doc.at("materials").is_object()) fail("'materials' must be an object");
        for (const auto &item : doc.at("materials").items()) {
            if (!item.value().is_number()) {
                fail("materials." + item.key() + ": conductivity must be a number");
            }
            material_index[item.key()] = static_cast<int>(profile.materials.size());
            profile.materials.push_back({item.key(), item.value().get<double>()});
        }
    }
    if (doc.contains("cavities")) {
        if (!doc.at("cavities").is_object()) fail("'cavities' must be an object");
        for (const auto &item : doc.at("cavities").items()) {
            cavity_index[item.key()] = static_cast<int>(profile.cavities.size());
            profile.cavities.push_back(parse_cavity(item.key(), item.value()));
        }
    }

    if (!doc.contains("regions") || !doc.at("regions").is_array()) {
        fail("document needs a 'regions' array");
    }
    int unnamed = 0;
    for (const auto &entry : doc.at("regions")) {
        const std::string where = "regions[" + std::to_string(unnamed) + "]";
        if (!entry.is_object()) fail(where + ": expected an object");
        check_keys(entry, where, {"name", "polygon", "material", "cavity"});
        RegionSpec region;
        region.name = entry.contains("name") ? entry.at("name").get<std::string>()
                                             : "regions[" + std::to_string(unnamed) + "]";
        if (!entry.contains("polygon")) fail(where + ": missing 'polygon'");
        region.polygon = parse_polygon(entry.at("polygon"), where + ".polygon");
        if (entry.contains("material") == entry.contains("cavity")) {
            fail(where + ": declare exactly one of 'material' or 'cavity'");
        }
        if (entry.contains("material")) {
            const std::string name = entry.at("material").get<std::string>();
            const auto it = material_index.find(name);
            if (it == material_index.end()) {
                throw Error("geometry", "reference error: unknown material '" + name + "'");
            }
            region.material_index = it->second;
        } else {
            const std::string name = entry.at("cavity").get<std::string>();
            const auto it = cavity_index.find(name);
            if (it == cavity_index.end()) {
                throw Error("geometry", "reference error: unknown cavity '" + name + "'");
            }
            region.cavity_index = it->second;
        }
        profile.regions.push_back(std::move(region));
        ++unnamed;
    }

    if (doc.contains("boundary")) {
        if (!doc.at("boundary").is_array()) fail("'boundary' must be an array");
        int idx = 0;
        for (const auto &entry : doc.at("boundary")) {
            profile.boundary.push_back(parse_face(entry, "boundary[" + std::to_string(idx) + "]"));
            ++idx;
        }
    }
    if (doc.contains("junctions")) {
        if (!doc.at("junctions").is_array()) fail("'junctions' must be an array");
        int idx = 0;
        for (const auto &entry : doc.at("junctions")) {
            const std::string where = "junctions[" + std::to_string(idx) + "]";
            check_keys(entry, where, {"point", "depth"});
            if (!entry.contains("point")) fail(where + ": missing 'point'");
            Junction junction;
            junction.point = parse_point(entry.at("point"), where + ".point");
            junction.depth = get_number(entry, where, "depth");
            if (!(junction.depth > 0.0)) fail(where + ": depth must be positive");
            profile.junctions.push_back(junction);
            ++idx;
        }
    }
    if (doc.contains("panel")) {
        const auto &panel = doc.at("panel");
        check_keys(panel, "panel", {"U_p", "b_p", "b_f"});
        PanelParams params{get_number(panel, "panel", "U_p"), get_number(panel, "panel", "b_p"),
                           get_number(panel, "panel", "b_f")};
        if (!(params.u_p > 0.0 && params.b_p > 0.0 && params.b_f > 0.0)) {
            fail("panel: U_p, b_p and b_f must be positive");
        }
        profile.panel = params;
    }
    if (doc.contains("reference_case")) {
        profile.reference_case = doc.at("reference_case").get<std::string>();
    }
    return profile;
}

} // namespace

ProfileSpec load_profile(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception &e) {
        fail(e.what());
    }
    if (!doc.is_object()) fail("top level must be an object");
    check_keys(doc, "document",
               {"materials", "cavities", "regions", "boundary", "junctions", "panel",
                "reference_case"});

    ProfileSpec profile;
    try {
        profile = parse_document(doc);
    } catch (const json::exception &e) {
        fail(e.what()); // mistyped fields become parse errors, not raw library ones
    }
    finalize_profile(profile);
    return profile;
}

ProfileSpec load_profile_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("geometry", "cannot open profile document '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_profile(buffer.str());
}

} // namespace framesph::geometry
