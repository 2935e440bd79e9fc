#pragma once

// Deterministic CSV writers: '\n' line endings, '.' decimal separator and
// scientific notation with 9 significant digits. Missing values are empty fields.

#include <filesystem>
#include <optional>
#include <string>

#include "mvfill/doe.hpp"
#include "mvfill/viasim.hpp"

namespace mvfill {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_sci(double value);
std::string format_sci(const std::optional<double>& value);

/// t_s,depth_um,radius_um,conc_norm: one row per snapshot and cell.
std::string profile_csv(const SimResult& result);
/// outcome,fill_time_s,fill_fraction,throwing_power,mean_rate_um_h,bottom_thickness_um
std::string summary_csv(const SimResult& result);
/// waveform,power_w,angle_deg,outcome,fill_time_s,fill_fraction,throwing_power,mean_rate_um_h
std::string doe_csv(const DoeTable& table);
/// factor,level,metric,value: per-waveform and per-power aggregates plus the
/// dc_sufficient and angle_invariant flags.
std::string doe_summary_csv(const DoeSummary& summary);

/// Writes through a temporary file and renames it into place. Throws
/// OutputError naming the path.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// profile.csv and summary.csv.
void write_outputs(const SimResult& result, const std::filesystem::path& out_dir);
/// doe.csv and summary.csv.
void write_outputs(const DoeTable& table, const std::filesystem::path& out_dir);

}  // namespace mvfill
