#include "bmofem/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bmofem/errors.hpp"

namespace bmofem::harness {

namespace fs = std::filesystem;

const ReportTable& StudyReport::table(const std::string& name) const {
    for (const ReportTable& t : tables) {
        if (t.name == name) {
            return t;
        }
    }
    throw InvariantError("report has no table '" + name + "'");
}

std::string format_value(const std::optional<double>& value) {
    if (!value) {
        return {};
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *value);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << kReportHeader << '\n';
    for (const ReportRow& r : rows) {
        out << r.level << ',' << r.cells;
        for (const auto* v : {&r.grad_lp, &r.f_lp, &r.stability_ratio, &r.err_phat, &r.order,
                              &r.coeff_err_l2, &r.conj_gap_ratio, &r.flux_ratio}) {
            out << ',' << format_value(*v);
        }
        out << '\n';
    }
}

void write_table(std::ostream& out, const ReportTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_value(row[i]);
        }
        out << '\n';
    }
}

std::string table_path(const std::string& csv_path, const std::string& name) {
    const fs::path p(csv_path);
    return (p.parent_path() / (p.stem().string() + "." + name + ".csv")).string();
}

std::string metadata_path(const std::string& csv_path) { return csv_path + ".meta.json"; }

namespace {

std::string metadata_json(const StudyReport& report) {
    nlohmann::json meta;
    meta["config"] = nlohmann::json::parse(dump_config(report.config));
    meta["summary"] = report.summary;
    meta["elapsed_seconds"] = report.elapsed_seconds;
    std::vector<std::string> names;
    for (const ReportTable& t : report.tables) {
        names.push_back(t.name);
    }
    meta["tables"] = names;
    return meta.dump(2) + "\n";
}

}  // namespace

void write_report(const StudyReport& report, const std::string& csv_path) {
    if (csv_path.empty()) {
        throw IoError("no output path");
    }
    struct Pending {
        std::string final_path;
        std::string temp_path;
        std::function<void(std::ostream&)> body;
    };
    std::vector<Pending> files;
    for (const ReportTable& t : report.tables) {
        const std::string path = table_path(csv_path, t.name);
        files.push_back({path, path + ".tmp", [&t](std::ostream& o) { write_table(o, t); }});
    }
    files.push_back({metadata_path(csv_path), metadata_path(csv_path) + ".tmp",
                     [&report](std::ostream& o) { o << metadata_json(report); }});
    files.push_back({csv_path, csv_path + ".tmp", [&report](std::ostream& o) { write_csv(o, report.rows); }});

    auto cleanup = [&files] {
        std::error_code ec;
        for (const Pending& f : files) {
            fs::remove(f.temp_path, ec);
        }
    };
    for (const Pending& f : files) {
        std::ofstream out(f.temp_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            cleanup();
            throw IoError("cannot write '" + f.temp_path + "'");
        }
        f.body(out);
        out.flush();
        if (!out) {
            cleanup();
            throw IoError("write to '" + f.temp_path + "' failed");
        }
    }
    for (const Pending& f : files) {
        std::error_code ec;
        fs::rename(f.temp_path, f.final_path, ec);
        if (ec) {
            cleanup();
            throw IoError("cannot move '" + f.temp_path + "' into place: " + ec.message());
        }
    }
}

}  // namespace bmofem::harness
