#include "ravkit/ingest/scope_file.hpp"

#include "ravkit/errors.hpp"

#include <json.hpp>

#include <set>

namespace ravkit::ingest {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed, const std::string& where)
{
    for (const auto& [key, value] : object.items()) {
        if (allowed.count(key) == 0) throw InputError(where + ": unknown field '" + key + "'");
    }
}

const json& require_object(const json& value, const std::string& where)
{
    if (!value.is_object()) throw InputError(where + ": expected an object");
    return value;
}

Count read_count(const json& object, const std::string& key, const std::string& where)
{
    auto it = object.find(key);
    if (it == object.end()) return 0;
    const std::string field = where + "." + key;
    if (it->is_number_unsigned()) return it->get<Count>();
    if (it->is_number_integer()) throw InputError(field + ": count must be non-negative");
    if (it->is_number_float()) {
        const double v = it->get<double>();
        if (v < 0) throw InputError(field + ": count must be non-negative");
        throw InputError(field + ": count must be an integer");
    }
    throw InputError(field + ": count must be a non-negative integer");
}

std::string read_string(const json& object, const std::string& key, const std::string& where, bool required)
{
    auto it = object.find(key);
    if (it == object.end()) {
        if (required) throw InputError(where + ": missing field '" + key + "'");
        return {};
    }
    if (!it->is_string()) throw InputError(where + "." + key + ": expected a string");
    std::string value = it->get<std::string>();
    for (unsigned char c : value) {
        if (c < 0x20 || c == 0x7f) throw InputError(where + "." + key + ": control characters are not allowed");
    }
    return value;
}

}  // namespace

Scope scope_from_json(const json& value, const std::string& where)
{
    require_object(value, where);
    reject_unknown_keys(value, {"id", "channel", "vector", "index", "porosity", "controls", "limitations"}, where);

    Scope scope;
    scope.id = read_string(value, "id", where, true);
    if (scope.id.empty()) throw InputError(where + ".id: must be non-empty");

    const std::string channel = read_string(value, "channel", where, false);
    if (!channel.empty()) {
        auto parsed = parse_channel(channel);
        if (!parsed) throw InputError(where + ".channel: unknown channel '" + channel + "'");
        scope.channel = *parsed;
    }
    scope.vector = read_string(value, "vector", where, false);
    scope.index = read_string(value, "index", where, false);

    if (auto it = value.find("porosity"); it != value.end()) {
        const std::string at = where + ".porosity";
        require_object(*it, at);
        reject_unknown_keys(*it, {"visibility", "access", "trust"}, at);
        scope.porosity.visibility = read_count(*it, "visibility", at);
        scope.porosity.access = read_count(*it, "access", at);
        scope.porosity.trust = read_count(*it, "trust", at);
    }
    if (auto it = value.find("controls"); it != value.end()) {
        const std::string at = where + ".controls";
        require_object(*it, at);
        std::set<std::string> allowed;
        for (ControlClass c : kAllControlClasses) allowed.emplace(control_name(c));
        reject_unknown_keys(*it, allowed, at);
        for (ControlClass c : kAllControlClasses) scope.controls[c] = read_count(*it, std::string(control_name(c)), at);
    }
    if (auto it = value.find("limitations"); it != value.end()) {
        const std::string at = where + ".limitations";
        require_object(*it, at);
        std::set<std::string> allowed;
        for (LimitationKind k : kAllLimitationKinds) allowed.emplace(limitation_name(k));
        reject_unknown_keys(*it, allowed, at);
        for (LimitationKind k : kAllLimitationKinds) {
            scope.limitations[k] = read_count(*it, std::string(limitation_name(k)), at);
        }
    }
    return scope;
}

json scope_to_json(const Scope& scope)
{
    json controls = json::object();
    for (ControlClass c : kAllControlClasses) controls[std::string(control_name(c))] = scope.controls[c];
    json limitations = json::object();
    for (LimitationKind k : kAllLimitationKinds) limitations[std::string(limitation_name(k))] = scope.limitations[k];
    return json{
        {"id", scope.id},
        {"channel", std::string(channel_name(scope.channel))},
        {"vector", scope.vector},
        {"index", scope.index},
        {"porosity",
         {{"visibility", scope.porosity.visibility},
          {"access", scope.porosity.access},
          {"trust", scope.porosity.trust}}},
        {"controls", controls},
        {"limitations", limitations},
    };
}


ScopeDocument parse_scope_document(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError("malformed scope file at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    require_object(root, "document");
    reject_unknown_keys(root, {"schema", "scopes", "units"}, "document");

    const std::string schema = read_string(root, "schema", "document", true);
    if (schema != kScopeSchema) {
        throw InputError("document.schema: unsupported schema '" + schema + "', expected '" +
                         std::string(kScopeSchema) + "'");
    }

    ScopeDocument doc;
    auto scopes = root.find("scopes");
    if (scopes == root.end()) throw InputError("document: missing field 'scopes'");
    if (!scopes->is_array()) throw InputError("document.scopes: expected an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < scopes->size(); ++i) {
        const std::string where = "scopes[" + std::to_string(i) + "]";
        Scope scope = scope_from_json((*scopes)[i], where);
        if (!ids.insert(scope.id).second) throw InputError(where + ".id: duplicate scope id '" + scope.id + "'");
        doc.scopes.push_back(std::move(scope));
    }

    if (auto units = root.find("units"); units != root.end()) {
        require_object(*units, "document.units");
        for (const auto& [kind, var] : units->items()) {
            if (!var.is_string()) throw InputError("document.units." + kind + ": expected a string");
            doc.units.emplace(kind, var.get<std::string>());
        }
        symbolic::validate_unit_map(doc.units);
    }
    return doc;
}

std::vector<Scope> parse_scope_file(std::string_view text)
{
    return parse_scope_document(text).scopes;
}

std::string render_scope_document(const ScopeDocument& document)
{
    json root = json::object();
    root["schema"] = std::string(kScopeSchema);
    root["scopes"] = json::array();
    for (const Scope& s : document.scopes) root["scopes"].push_back(scope_to_json(s));
    if (!document.units.empty()) root["units"] = document.units;
    return root.dump(2) + "\n";
}

}  // namespace ravkit::ingest
