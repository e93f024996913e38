#include "ravkit/report.hpp"

#include "ravkit/errors.hpp"
#include "ravkit/ingest/scope_file.hpp"
#include "json_output.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace ravkit::report {

using nlohmann::json;

namespace {

using detail::dump;

json real(double value) { return detail::fixed6(value); }

json rational(const Rational& value) { return to_string(value); }

json breakdown_to_json(const RavBreakdown& b)
{
    json mc = json::object();
    json tc = json::object();
    for (ControlClass c : kAllControlClasses) {
        mc[std::string(control_name(c))] = rational(b.mc_per_class[index_of(c)]);
        tc[std::string(control_name(c))] = rational(b.tc_per_class[index_of(c)]);
    }
    json weights = json::object();
    for (LimitationKind k : kAllLimitationKinds) weights[std::string(limitation_name(k))] = rational(b.weights[index_of(k)]);
    return json{
        {"opsec_sum", rational(b.opsec_sum)},
        {"opsec_base", real(b.opsec_base)},
        {"lc_sum", rational(b.lc_sum)},
        {"mc_per_class", mc},
        {"tc_per_class", tc},
        {"mc_sum", rational(b.mc_sum)},
        {"mc_class_a", rational(b.mc_class_a)},
        {"mc_class_b", rational(b.mc_class_b)},
        {"mc_vg", rational(b.mc_vg)},
        {"tc_base", real(b.tc_base)},
        {"fc_base", real(b.fc_base)},
        {"weights", weights},
        {"seclim_sum", rational(b.seclim_sum)},
        {"seclim_base", real(b.seclim_base)},
        {"actsec", real(b.actsec)},
    };
}

json report_json(const RavBreakdown& breakdown, const Scope& scope, const std::vector<std::string>& sources)
{
    json doc{
        {"schema", std::string(kReportSchema)},
        {"kind", "rav"},
        {"input", ingest::scope_to_json(scope)},
        {"breakdown", breakdown_to_json(breakdown)},
    };
    if (!sources.empty()) doc["sources"] = sources;
    return doc;
}

// Left-aligned columns padded to the widest cell, two spaces apart.
class Table {
public:
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    void write(std::ostream& out, std::string_view indent) const
    {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            width.resize(std::max(width.size(), r.size()));
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        }
        for (const auto& r : rows_) {
            std::string line(indent);
            for (std::size_t i = 0; i < r.size(); ++i) {
                line += r[i];
                if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string text_report(const RavBreakdown& b, const Scope& s, const std::vector<std::string>& sources)
{
    std::ostringstream out;
    out << "rav report (" << kReportSchema << ")\n\n";

    out << "input\n";
    Table labels;
    labels.row({"scope", s.id});
    labels.row({"channel", std::string(channel_name(s.channel))});
    labels.row({"vector", s.vector.empty() ? "-" : s.vector});
    labels.row({"index", s.index.empty() ? "-" : s.index});
    if (!sources.empty()) {
        std::string joined;
        for (const auto& id : sources) joined += (joined.empty() ? "" : ", ") + id;
        labels.row({"sources", joined});
    }
    labels.write(out, "  ");
    out << '\n';

    Table porosity;
    porosity.row({"porosity", "count"});
    porosity.row({"visibility", std::to_string(s.porosity.visibility)});
    porosity.row({"access", std::to_string(s.porosity.access)});
    porosity.row({"trust", std::to_string(s.porosity.trust)});
    porosity.write(out, "  ");
    out << '\n';

    Table controls;
    controls.row({"control", "class", "LC"});
    for (ControlClass c : kAllControlClasses) {
        controls.row({std::string(control_name(c)), meta_class(c) == MetaClass::a ? "A" : "B",
                      std::to_string(s.controls[c])});
    }
    controls.write(out, "  ");
    out << '\n';

    Table limitations;
    limitations.row({"limitation", "count"});
    for (LimitationKind k : kAllLimitationKinds) {
        limitations.row({std::string(limitation_name(k)), std::to_string(s.limitations[k])});
    }
    limitations.write(out, "  ");
    out << '\n';

    out << "breakdown\n";
    Table sums;
    sums.row({"opsec_sum", to_string(b.opsec_sum)});
    sums.row({"opsec_base", format_fixed6(b.opsec_base)});
    sums.row({"lc_sum", to_string(b.lc_sum)});
    sums.row({"mc_sum", to_string(b.mc_sum)});
    sums.row({"mc_class_a", to_string(b.mc_class_a)});
    sums.row({"mc_class_b", to_string(b.mc_class_b)});
    sums.row({"mc_vg", to_string(b.mc_vg)});
    sums.row({"tc_base", format_fixed6(b.tc_base)});
    sums.row({"fc_base", format_fixed6(b.fc_base)});
    sums.row({"seclim_sum", to_string(b.seclim_sum)});
    sums.row({"seclim_base", format_fixed6(b.seclim_base)});
    sums.write(out, "  ");
    out << '\n';

    Table classes;
    classes.row({"control", "MC", "TC"});
    for (ControlClass c : kAllControlClasses) {
        classes.row({std::string(control_name(c)), to_string(b.mc_per_class[index_of(c)]),
                     to_string(b.tc_per_class[index_of(c)])});
    }
    classes.write(out, "  ");
    out << '\n';

    Table weights;
    weights.row({"limitation", "weight"});
    for (LimitationKind k : kAllLimitationKinds) {
        weights.row({std::string(limitation_name(k)), to_string(b.weights[index_of(k)])});
    }
    weights.write(out, "  ");
    out << '\n';

    out << "ActSec = " << format_fixed6(b.actsec) << '\n';
    return out.str();
}

const json& member(const json& object, const char* key, const std::string& where)
{
    if (!object.is_object()) throw InputError(where + ": expected an object");
    auto it = object.find(key);
    if (it == object.end()) throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

Rational read_rational(const json& object, const char* key, const std::string& where)
{
    const json& v = member(object, key, where);
    if (!v.is_string()) throw InputError(where + "." + key + ": expected a rational string");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(where + "." + key + ": " + e.what());
    }
}

double read_real(const json& object, const char* key, const std::string& where)
{
    const json& v = member(object, key, where);
    if (!v.is_number()) throw InputError(where + "." + key + ": expected a number");
    return v.get<double>();
}

}  // namespace

std::optional<Format> parse_format(std::string_view name)
{
    if (name == "text") return Format::text;
    if (name == "json") return Format::json;
    return std::nullopt;
}

std::string render_report(const RavBreakdown& breakdown, const Scope& scope, Format format,
                          const std::vector<std::string>& sources)
{
    if (format == Format::json) return dump(report_json(breakdown, scope, sources));
    return text_report(breakdown, scope, sources);
}

std::string render_reports(const std::vector<std::pair<Scope, RavBreakdown>>& items, Format format)
{
    if (items.size() == 1) return render_report(items[0].second, items[0].first, format);
    if (format == Format::json) {
        json all = json::array();
        for (const auto& [scope, breakdown] : items) all.push_back(report_json(breakdown, scope, {}));
        return dump(all);
    }
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += '\n';
        out += text_report(items[i].second, items[i].first, {});
    }
    return out;
}

ParsedReport parse_report_json(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError("malformed report at byte " + std::to_string(e.byte));
    }
    const json& schema = member(root, "schema", "report");
    if (!schema.is_string() || schema.get<std::string>() != kReportSchema) {
        throw InputError("report.schema: expected '" + std::string(kReportSchema) + "'");
    }
    const json& kind = member(root, "kind", "report");
    if (!kind.is_string() || kind.get<std::string>() != "rav") throw InputError("report.kind: expected 'rav'");

    ParsedReport out;
    out.scope = ingest::scope_from_json(member(root, "input", "report"), "report.input");
    if (auto it = root.find("sources"); it != root.end()) {
        if (!it->is_array()) throw InputError("report.sources: expected an array");
        for (const json& id : *it) {
            if (!id.is_string()) throw InputError("report.sources: expected strings");
            out.sources.push_back(id.get<std::string>());
        }
    }

    const std::string at = "report.breakdown";
    const json& b = member(root, "breakdown", "report");
    RavBreakdown& r = out.breakdown;
    r.opsec_sum = read_rational(b, "opsec_sum", at);
    r.opsec_base = read_real(b, "opsec_base", at);
    r.lc_sum = read_rational(b, "lc_sum", at);
    const json& mc = member(b, "mc_per_class", at);
    const json& tc = member(b, "tc_per_class", at);
    for (ControlClass c : kAllControlClasses) {
        const std::string name(control_name(c));
        r.mc_per_class[index_of(c)] = read_rational(mc, name.c_str(), at + ".mc_per_class");
        r.tc_per_class[index_of(c)] = read_rational(tc, name.c_str(), at + ".tc_per_class");
    }
    r.mc_sum = read_rational(b, "mc_sum", at);
    r.mc_class_a = read_rational(b, "mc_class_a", at);
    r.mc_class_b = read_rational(b, "mc_class_b", at);
    r.mc_vg = read_rational(b, "mc_vg", at);
    r.tc_base = read_real(b, "tc_base", at);
    r.fc_base = read_real(b, "fc_base", at);
    const json& w = member(b, "weights", at);
    for (LimitationKind k : kAllLimitationKinds) {
        const std::string name(limitation_name(k));
        r.weights[index_of(k)] = read_rational(w, name.c_str(), at + ".weights");
    }
    r.seclim_sum = read_rational(b, "seclim_sum", at);
    r.seclim_base = read_real(b, "seclim_base", at);
    r.actsec = read_real(b, "actsec", at);
    return out;
}

RavBreakdown rounded(const RavBreakdown& breakdown)
{
    RavBreakdown r = breakdown;
    r.opsec_base = round_fixed6(r.opsec_base);
    r.tc_base = round_fixed6(r.tc_base);
    r.fc_base = round_fixed6(r.fc_base);
    r.seclim_base = round_fixed6(r.seclim_base);
    r.actsec = round_fixed6(r.actsec);
    return r;
}

namespace {

json record_json(const trust::ApplicantRecord& r)
{
    using trust::ReferencePolarity;
    return json{
        {"id", r.id},
        {"months_unemployed", r.months_unemployed},
        {"months_eligible", r.months_eligible},
        {"criminal_offenses_known", r.criminal_offenses_known},
        {"age_years", r.age_years},
        {"legal_adult_age", r.legal_adult_age},
        {"references_positive", r.references_with(ReferencePolarity::positive)},
        {"references_neutral", r.references_with(ReferencePolarity::neutral)},
        {"references_negative", r.references_with(ReferencePolarity::negative)},
        {"past_employer_count", r.past_employer_count},
        {"hours_alone_per_day", to_string(r.hours_alone_per_day)},
        {"working_hours_per_day", to_string(r.working_hours_per_day)},
        {"employees_in_community", r.employees_in_community},
        {"community_population", r.community_population},
    };
}

json rule_json(const trust::RuleResult& r)
{
    json j{{"rule", r.rule_id}, {"property", std::string(trust::property_name(r.property))}};
    if (r.value) {
        j["value"] = to_string(*r.value);
        j["approx"] = real(to_double(*r.value));
    } else {
        j["value"] = nullptr;
        j["undefined_reason"] = r.undefined_reason;
    }
    if (!r.excluded.empty()) j["excluded"] = r.excluded;
    return j;
}

std::string value_text(const std::optional<Rational>& v)
{
    if (!v) return "undefined";
    return to_string(*v) + " (" + format_fixed6(to_double(*v)) + ")";
}

}  // namespace

std::string render_trust_report(const std::vector<TrustEntry>& entries, Format format)
{
    if (format == Format::json) {
        json list = json::array();
        for (const TrustEntry& e : entries) {
            json rules = json::array();
            for (const auto& r : e.ratios) rules.push_back(rule_json(r));
            json props = json::object();
            for (const auto& [p, v] : e.score.per_property) {
                props[std::string(trust::property_name(p))] = v ? json(to_string(*v)) : json(nullptr);
            }
            list.push_back(json{
                {"input", record_json(e.record)},
                {"rules", rules},
                {"properties", props},
                {"mode", std::string(trust::mode_name(e.score.mode))},
                {"combined", to_string(e.score.combined)},
                {"combined_approx", real(to_double(e.score.combined))},
            });
        }
        return dump(json{{"schema", std::string(kReportSchema)}, {"kind", "trust"}, {"records", list}});
    }

    std::ostringstream out;
    out << "trust report (" << kReportSchema << ")\n";
    for (const TrustEntry& e : entries) {
        const trust::ApplicantRecord& r = e.record;
        out << "\nrecord " << r.id << "\n";
        Table input;
        const json fields = record_json(r);
        for (const auto& [key, value] : fields.items()) {
            if (key == "id") continue;
            input.row({key, value.is_string() ? value.get<std::string>() : value.dump()});
        }
        input.write(out, "  ");
        out << '\n';
        Table rules;
        rules.row({"rule", "property", "value"});
        for (const auto& rr : e.ratios) {
            std::string v = value_text(rr.value);
            if (!rr.value) v += ": " + rr.undefined_reason;
            rules.row({rr.rule_id, std::string(trust::property_name(rr.property)), v});
        }
        rules.write(out, "  ");
        out << '\n';
        Table props;
        for (const auto& [p, v] : e.score.per_property) props.row({std::string(trust::property_name(p)), value_text(v)});
        props.write(out, "  ");
        out << "  combined (" << trust::mode_name(e.score.mode) << ") = " << value_text(e.score.combined) << '\n';
    }
    return out.str();
}

}  // namespace ravkit::report
