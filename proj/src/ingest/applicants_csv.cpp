#include "ravkit/ingest/applicants_csv.hpp"

#include "ravkit/errors.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>

namespace ravkit::ingest {

namespace {

const std::set<std::string> kRequired = {"months_unemployed", "months_eligible", "criminal_offenses_known",
                                         "age_years"};
const std::set<std::string> kOptional = {"id",
                                         "legal_adult_age",
                                         "references_positive",
                                         "references_neutral",
                                         "references_negative",
                                         "past_employer_count",
                                         "hours_alone_per_day",
                                         "working_hours_per_day",
                                         "employees_in_community",
                                         "community_population"};

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

Count parse_count(const std::string& column, const std::string& text)
{
    if (text.empty()) throw InputError(column + ": empty value");
    if (text.front() == '-') throw InputError(column + ": must be non-negative");
    Count v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc::result_out_of_range) throw InputError(column + ": value out of range");
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError(column + ": expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

Rational parse_hours(const std::string& column, const std::string& text)
{
    Rational v;
    try {
        v = parse_rational(text);
    } catch (const InputError& e) {
        throw InputError(column + ": " + e.what());
    }
    if (v < 0) throw InputError(column + ": must be non-negative");
    return v;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? current : trim(current));
            current.clear();
            was_quoted = false;
        } else {
            current.push_back(c);
        }
    }
    if (quoted) throw InputError("unterminated quoted field");
    fields.push_back(was_quoted ? current : trim(current));
    return fields;
}

ApplicantImport parse_applicants_csv(std::string_view text)
{
    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos <= text.size();) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    auto blank = [](std::string_view l) { return trim(l).empty(); };

    std::size_t header_index = 0;
    while (header_index < lines.size() && blank(lines[header_index])) ++header_index;
    if (header_index == lines.size()) throw InputError("applicant CSV is empty");

    std::vector<std::string> header;
    try {
        header = split_csv_line(lines[header_index]);
    } catch (const InputError& e) {
        throw InputError(std::string("header: ") + e.what());
    }
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& name = header[i];
        if (kRequired.count(name) == 0 && kOptional.count(name) == 0) {
            throw InputError("header: unknown column '" + name + "'");
        }
        if (!column.emplace(name, i).second) throw InputError("header: duplicate column '" + name + "'");
    }
    for (const std::string& name : kRequired) {
        if (column.count(name) == 0) throw InputError("header: missing required column '" + name + "'");
    }

    ApplicantImport out;
    std::size_t row = 0;
    for (std::size_t li = header_index + 1; li < lines.size(); ++li) {
        if (blank(lines[li])) continue;
        ++row;
        try {
            const std::vector<std::string> fields = split_csv_line(lines[li]);
            if (fields.size() != header.size()) {
                throw InputError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()));
            }
            auto cell = [&](const std::string& name) -> std::optional<std::string> {
                auto it = column.find(name);
                if (it == column.end()) return std::nullopt;
                return fields[it->second];
            };
            auto count_or = [&](const std::string& name, Count fallback) {
                auto v = cell(name);
                return v ? parse_count(name, *v) : fallback;
            };
            auto hours_or_zero = [&](const std::string& name) {
                auto v = cell(name);
                return v ? parse_hours(name, *v) : Rational(0);
            };

            trust::ApplicantRecord r;
            r.id = cell("id").value_or("row-" + std::to_string(row));
            r.months_unemployed = count_or("months_unemployed", 0);
            r.months_eligible = count_or("months_eligible", 0);
            r.criminal_offenses_known = count_or("criminal_offenses_known", 0);
            r.age_years = count_or("age_years", 0);
            r.legal_adult_age = count_or("legal_adult_age", 18);
            r.past_employer_count = count_or("past_employer_count", 0);
            r.hours_alone_per_day = hours_or_zero("hours_alone_per_day");
            r.working_hours_per_day = hours_or_zero("working_hours_per_day");
            r.employees_in_community = count_or("employees_in_community", 0);
            r.community_population = count_or("community_population", 0);

            const std::pair<const char*, trust::ReferencePolarity> polarities[] = {
                {"references_positive", trust::ReferencePolarity::positive},
                {"references_neutral", trust::ReferencePolarity::neutral},
                {"references_negative", trust::ReferencePolarity::negative},
            };
            Count total_refs = 0;
            for (const auto& [name, polarity] : polarities) {
                const Count n = count_or(name, 0);
                total_refs += n;
                if (total_refs > r.past_employer_count) {
                    throw InputError("references exceed past_employer_count");
                }
                for (Count k = 0; k < n; ++k) {
                    r.references.push_back({"employer-" + std::to_string(r.references.size() + 1), polarity});
                }
            }
            trust::validate(r);
            out.records.push_back(std::move(r));
        } catch (const InputError& e) {
            out.errors.push_back({row, e.what()});
        }
    }
    return out;
}

}  // namespace ravkit::ingest
