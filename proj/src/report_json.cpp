// SPDX-License-Identifier: Apache-2.0
#include "densitylab/report_json.hpp"

#include "densitylab/errors.hpp"

#include <cstdio>

namespace densitylab {

Json frame_system_to_json(const FrameSystem& f) {
    Json vectors = Json::array();
    for (const auto& v : f.vectors) {
        Json vec = Json::array();
        for (const auto& e : v)
            vec.push_back(Json::array({e.real(), e.imag()}));
        vectors.push_back(std::move(vec));
    }
    return Json{{"dim", f.dim}, {"labels", f.labels}, {"vectors", vectors}};
}

FrameSystem frame_system_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vectors"))
        throw ConfigInvalid("frame system JSON needs 'dim' and 'vectors'");
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<std::vector<cdouble>> vectors;
    for (const auto& vec : j.at("vectors")) {
        std::vector<cdouble> v;
        for (const auto& e : vec) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigInvalid("frame system JSON entries must be [re, im]");
            v.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        vectors.push_back(std::move(v));
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j.at("labels").get<std::vector<std::string>>();
    return FrameSystem(dim, std::move(vectors), std::move(labels));
}

Json spectral_report_to_json(const SpectralReport& r) {
    return Json{{"eigenvalues", r.eigenvalues},
                {"min_nonzero", r.min_nonzero},
                {"max", r.max},
                {"rank", r.rank},
                {"tolerance", r.tolerance_used}};
}

Json wh_report_to_json(const wh::WHReport& r) {
    return Json{{"invariant", to_string(r.invariant)},
                {"invariant_value", to_double(r.invariant)},
                {"frame_bounds", spectral_report_to_json(r.frame_bounds)},
                {"riesz_bounds", spectral_report_to_json(r.riesz_bounds)},
                {"parseval", r.parseval},
                {"onb", r.onb}};
}

Json gabor_bounds_to_json(const gabor::GaborBoundsReport& r) {
    return Json{{"method", r.method},
                {"lower", r.lower},
                {"upper", r.upper},
                {"p", r.p},
                {"q", r.q},
                {"grid", r.grid},
                {"zak_truncation", r.zak_truncation},
                {"window_dilation", r.window_dilation},
                {"certified", r.certified}};
}

Json invariant_to_json(const density::Invariant& inv) {
    Json j{{"exact", nullptr}, {"value", inv.value}, {"error", inv.error}};
    if (inv.exact)
        j["exact"] = inv.exact->str();
    return j;
}

namespace {

std::string regime_name(const density::Verdict& v) {
    if (!v.regime_decided)
        return "undecided";
    if (v.regime < 0)
        return "subcritical";
    if (v.regime > 0)
        return "supercritical";
    return "critical";
}

} // namespace

Json verdict_to_json(const density::Verdict& v) {
    Json claims = Json::array();
    for (const auto& c : v.claims)
        claims.push_back(density::to_string(c));
    return Json{{"invariant", invariant_to_json(v.invariant)},
                {"kleppner", density::to_string(v.kleppner)},
                {"regime", regime_name(v)},
                {"claims", claims},
                {"caveats", v.caveats}};
}

Json kleppner_to_json(const density::KleppnerResult& r) {
    Json j{{"status", density::to_string(r.status)},
           {"witness", nullptr},
           {"searched_radius", r.searched_radius}};
    if (r.witness) {
        Json w = Json::array();
        for (const auto& v : *r.witness)
            w.push_back(v.str());
        j["witness"] = w;
    }
    return j;
}

Json bergman_verdict_to_json(const bergman::BergmanVerdict& v) {
    Json j{{"alpha", v.alpha},
           {"alpha_exact", nullptr},
           {"d_pi", v.d_pi},
           {"invariant", invariant_to_json(v.invariant)},
           {"trichotomy", verdict_to_json(v.trichotomy)},
           {"stabilizer", v.stabilizer},
           {"kernel",
            Json{{"invariant", invariant_to_json(v.kernel_invariant)},
                 {"complete", v.kernel_complete},
                 {"frame", v.kernel_frame},
                 {"riesz_indexed", v.kernel_riesz_indexed},
                 {"riesz_reduced", v.kernel_riesz_reduced}}},
           {"co_compact", v.co_compact},
           {"caveats", v.caveats}};
    if (v.alpha_exact)
        j["alpha_exact"] = to_string(*v.alpha_exact);
    return j;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

bool type_matches(const Json& doc, const std::string& type) {
    if (type == "object")
        return doc.is_object();
    if (type == "array")
        return doc.is_array();
    if (type == "string")
        return doc.is_string();
    if (type == "number")
        return doc.is_number();
    if (type == "integer")
        return doc.is_number_integer() || doc.is_number_unsigned();
    if (type == "boolean")
        return doc.is_boolean();
    if (type == "null")
        return doc.is_null();
    return false;
}

std::string validate_node(const Json& doc, const Json& schema, const std::string& path) {
    if (schema.contains("type")) {
        const auto& t = schema.at("type");
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(doc, t.get<std::string>());
        } else if (t.is_array()) {
            for (const auto& alt : t)
                ok = ok || type_matches(doc, alt.get<std::string>());
        }
        if (!ok)
            return path + ": type mismatch";
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema.at("enum"))
            ok = ok || alt == doc;
        if (!ok)
            return path + ": value not in enum";
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!doc.contains(key.get<std::string>()))
                    return path + ": missing required key '" + key.get<std::string>() + "'";
        if (schema.contains("properties")) {
            for (auto it = schema.at("properties").begin(); it != schema.at("properties").end();
                 ++it) {
                if (!doc.contains(it.key()))
                    continue;
                const std::string err =
                    validate_node(doc.at(it.key()), it.value(), path + "/" + it.key());
                if (!err.empty())
                    return err;
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        std::size_t idx = 0;
        for (const auto& item : doc) {
            const std::string err = validate_node(item, schema.at("items"),
                                                  path + "[" + std::to_string(idx) + "]");
            if (!err.empty())
                return err;
            ++idx;
        }
    }
    return "";
}

} // namespace

std::string validate_against_schema(const Json& doc, const Json& schema) {
    return validate_node(doc, schema, "$");
}

} // namespace densitylab
