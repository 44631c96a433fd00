#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "arfima/sim_study.hpp"
#include "arfima/types.hpp"

namespace arfima {

/// RFC-4180-style CSV with a mandatory header row. Missing values are
/// rejected; the methods assume complete, regularly spaced series.
TimeSeries read_csv_series(std::istream& in, const std::string& source,
                           const std::string& column = "");
TimeSeries read_csv_series_file(const std::string& path, const std::string& column = "");

Matrix read_csv_matrix_file(const std::string& path);

void write_csv_series(std::ostream& out, const TimeSeries& series,
                      const std::string& column = "value");

/// Flat `key = value` configuration text; '#' starts a comment, lists are
/// comma separated. Unknown keys are collected and reported all at once.
StudyConfig parse_study_config(std::istream& in);
StudyConfig parse_study_config_file(const std::string& path);

std::string study_results_csv_header();
std::string study_results_csv_row(const CellSummary& cell);
std::string study_summary_json(const StudyConfig& config, const std::vector<CellSummary>& cells);

std::string raw_records_csv_header();
std::string raw_records_csv_row(const ReplicationRecord& rec);

}  // namespace arfima
