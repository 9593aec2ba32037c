#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmofem/harness/config.hpp"

namespace bmofem::harness {

/// Header of the main study CSV.
inline constexpr const char* kReportHeader =
    "level,cells,grad_lp,f_lp,stability_ratio,err_phat,order,coeff_err_l2,conj_gap_ratio,flux_ratio";

struct ReportRow {
    int level = 0;
    std::size_t cells = 0;
    std::optional<double> grad_lp;
    std::optional<double> f_lp;
    std::optional<double> stability_ratio;
    std::optional<double> err_phat;
    std::optional<double> order;
    std::optional<double> coeff_err_l2;
    std::optional<double> conj_gap_ratio;
    std::optional<double> flux_ratio;
};

/// Auxiliary table written next to the main CSV as `<out stem>.<name>.csv`.
struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

struct StudyReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    std::vector<ReportTable> tables;
    /// Scalar study outcomes (e.g. max/min stability ratio), echoed in metadata.
    std::map<std::string, double> summary;
    double elapsed_seconds = 0.0;

    const ReportTable& table(const std::string& name) const;
};

/// Formats a value with 17 significant digits; absent values are empty.
std::string format_value(const std::optional<double>& value);

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
void write_table(std::ostream& out, const ReportTable& table);

/// Path of an auxiliary table for a main CSV path: `dir/stem.name.csv`.
std::string table_path(const std::string& csv_path, const std::string& name);
/// Metadata path: `<csv path>.meta.json`.
std::string metadata_path(const std::string& csv_path);

/// Writes the main CSV, auxiliary tables and metadata (config echo, summary,
/// timing). Every file goes through a temporary and a rename, and the main CSV
/// is renamed last; on failure the temporaries are removed and IoError is
/// thrown.
void write_report(const StudyReport& report, const std::string& csv_path);

}  // namespace bmofem::harness
