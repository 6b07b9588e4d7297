#include "typea/model_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace typea {

namespace {

using Json = nlohmann::ordered_json;

struct Slot {
    const char* key;
    double ChristoffelSymbols::*member;
};

constexpr std::array<Slot, 6> kSlots{{
    {"111", &ChristoffelSymbols::c111},
    {"112", &ChristoffelSymbols::c112},
    {"121", &ChristoffelSymbols::c121},
    {"122", &ChristoffelSymbols::c122},
    {"221", &ChristoffelSymbols::c221},
    {"222", &ChristoffelSymbols::c222},
}};

[[noreturn]] void reject(const std::string& what) { throw Error(ErrorKind::InputDomain, "model document: " + what); }

}  // namespace

ModelDocument parse_model_document(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        reject(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) reject("top level must be an object");
    for (const auto& [key, value] : root.items())
        if (key != "christoffel" && key != "name") reject("unknown key \"" + key + "\"");

    ModelDocument doc;
    const auto table = root.find("christoffel");
    if (table == root.end() || !table->is_object()) reject("\"christoffel\" object is required");
    for (const auto& [key, value] : table->items()) {
        const bool known = std::any_of(kSlots.begin(), kSlots.end(), [&](const Slot& s) { return key == s.key; });
        if (!known) reject("unknown Christoffel key \"" + key + "\"");
    }
    for (const Slot& s : kSlots) {
        const auto entry = table->find(s.key);
        if (entry == table->end()) reject(std::string("missing Christoffel key \"") + s.key + "\"");
        if (!entry->is_number()) reject(std::string("entry \"") + s.key + "\" must be a number");
        const double value = entry->get<double>();
        if (!std::isfinite(value)) reject(std::string("entry \"") + s.key + "\" must be finite");
        doc.christoffel.*s.member = value;
    }
    if (const auto name = root.find("name"); name != root.end()) {
        if (!name->is_string()) reject("\"name\" must be a string");
        doc.name = name->get<std::string>();
    }
    return doc;
}

std::string serialize_model_document(const ModelDocument& doc) {
    Json table = Json::object();
    for (const Slot& s : kSlots) table[s.key] = doc.christoffel.*s.member;
    Json root = Json::object();
    root["christoffel"] = std::move(table);
    if (doc.name) root["name"] = *doc.name;
    return root.dump();
}

ModelDocument load_model_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InputDomain, "cannot read model file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model_document(buffer.str());
}

ModelDocument canonical_document(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    const std::string_view family_name = spec.substr(0, colon);
    double delta = 0.0;
    if (colon != std::string_view::npos) {
        const std::string_view number = spec.substr(colon + 1);
        const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), delta);
        if (ec != std::errc{} || end != number.data() + number.size() || number.empty())
            throw Error(ErrorKind::InputDomain, "canonical model: bad delta in \"" + std::string(spec) + "\"");
    }
    CanonicalFamily family;
    if (family_name == "M1") family = CanonicalFamily::M1;
    else if (family_name == "M2") family = CanonicalFamily::M2;
    else if (family_name == "M3") family = CanonicalFamily::M3;
    else if (family_name == "M+") family = CanonicalFamily::MPlus;
    else if (family_name == "M-") family = CanonicalFamily::MMinus;
    else throw Error(ErrorKind::InputDomain, "unknown canonical model \"" + std::string(family_name) + "\"");
    const bool takes_delta = family == CanonicalFamily::MPlus || family == CanonicalFamily::MMinus;
    if (!takes_delta && colon != std::string_view::npos)
        throw Error(ErrorKind::InputDomain, "canonical model " + std::string(family_name) + " takes no delta");
    ModelDocument doc;
    doc.christoffel = canonical_model(family, delta);
    doc.name = std::string(spec);
    return doc;
}

}  // namespace typea
