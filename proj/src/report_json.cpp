#include "cellrev/report_json.hpp"

namespace cellrev {

nlohmann::json report_to_json(const ReversibilityReport& r) {
    nlohmann::json j;
    j["class"] = class_name(r.cls);
    j["expressions"] = nlohmann::json::array();
    for (const auto& e : r.expressions) j["expressions"].push_back({{"modulus", e.modulus}, {"offset", e.offset}});
    j["irreversibleFrom"] = r.irreversibleFrom ? nlohmann::json(*r.irreversibleFrom) : nlohmann::json(nullptr);
    j["sporadic"] = r.sporadic;
    j["M"] = r.M;
    j["lastUniqueLevel"] = r.lastUniqueLevel;
    return j;
}

ReversibilityReport report_from_json(const nlohmann::json& j) {
    try {
        ReversibilityReport r;
        r.cls = parse_class(j.at("class").get<std::string>());
        for (const auto& e : j.at("expressions"))
            r.expressions.push_back({e.at("modulus").get<std::uint64_t>(), e.at("offset").get<std::uint64_t>()});
        if (!j.at("irreversibleFrom").is_null()) r.irreversibleFrom = j.at("irreversibleFrom").get<std::uint64_t>();
        r.sporadic = j.at("sporadic").get<std::vector<std::uint64_t>>();
        r.M = j.at("M").get<std::size_t>();
        r.lastUniqueLevel = j.at("lastUniqueLevel").get<int>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what());
    }
}

nlohmann::json fixed_size_to_json(const FixedSizeResult& r, long long n) {
    return {{"n", n},
            {"reversible", r.reversible},
            {"M", r.M},
            {"lastUniqueLevel", r.lastUniqueLevel},
            {"explicitLevels", r.explicitLevels}};
}

FixedSizeResult fixed_size_from_json(const nlohmann::json& j) {
    try {
        FixedSizeResult r;
        r.reversible = j.at("reversible").get<bool>();
        r.M = j.at("M").get<std::size_t>();
        r.lastUniqueLevel = j.at("lastUniqueLevel").get<int>();
        r.explicitLevels = j.at("explicitLevels").get<bool>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad result JSON: ") + e.what());
    }
}

}  // namespace cellrev
