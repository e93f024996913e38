#pragma once

#include "ravkit/trust.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ravkit::ingest {

/// Header contract (first line, any column order, unknown columns rejected):
///   required: months_unemployed, months_eligible, criminal_offenses_known, age_years
///   optional: id, legal_adult_age (default 18), references_positive,
///             references_neutral, references_negative, past_employer_count,
///             hours_alone_per_day, working_hours_per_day,
///             employees_in_community, community_population (default 0)
/// Hours accept integers, fractions ("15/2") or decimals ("7.5").
struct RowError {
    std::size_t row = 0;  // 1-based data row, header excluded
    std::string message;
};

struct ApplicantImport {
    std::vector<trust::ApplicantRecord> records;
    std::vector<RowError> errors;
};

/// Header problems throw InputError; bad rows are collected in `errors` and skipped.
ApplicantImport parse_applicants_csv(std::string_view text);

/// Splits one CSV line, honouring double quotes and "" escapes.
/// Throws InputError on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace ravkit::ingest
