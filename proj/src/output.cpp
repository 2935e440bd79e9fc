#include "mvfill/output.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace mvfill {

std::string format_sci(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", value);
    return buf;
}

std::string format_sci(const std::optional<double>& value)
{
    return value ? format_sci(*value) : std::string{};
}

std::string profile_csv(const SimResult& result)
{
    const auto& g = result.geometry;
    std::string out = "t_s,depth_um,radius_um,conc_norm\n";
    out.reserve(result.snapshots.size() * static_cast<std::size_t>(g.cells) * 64);
    for (const auto& snap : result.snapshots) {
        const std::string t = format_sci(snap.t);
        for (int i = 0; i < g.cells; ++i) {
            out += t;
            out += ',';
            out += format_sci(g.cell_center(i) * 1.0e6);
            out += ',';
            out += format_sci(snap.radius[i] * 1.0e6);
            out += ',';
            out += format_sci(snap.conc[i]);
            out += '\n';
        }
    }
    return out;
}

std::string summary_csv(const SimResult& result)
{
    const auto& m = result.metrics;
    std::string out = "outcome,fill_time_s,fill_fraction,throwing_power,mean_rate_um_h,bottom_thickness_um\n";
    out += std::string(to_string(m.outcome)) + ',' + format_sci(m.fill_time) + ',' + format_sci(m.fill_fraction) + ','
           + format_sci(m.throwing_power) + ',' + format_sci(m.mean_rate_um_h) + ','
           + format_sci(m.bottom_thickness_um) + '\n';
    return out;
}

namespace {

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

}  // namespace

std::string doe_csv(const DoeTable& table)
{
    std::string out = "waveform,power_w,angle_deg,outcome,fill_time_s,fill_fraction,throwing_power,mean_rate_um_h\n";
    for (const auto& row : table.rows) {
        const std::string outcome = row.error.empty() ? row.outcome : row.outcome + ": " + row.error;
        out += std::string(to_string(row.waveform)) + ',' + format_sci(row.power) + ',' + format_sci(row.angle) + ','
               + csv_field(outcome) + ',' + format_sci(row.fill_time) + ',' + format_sci(row.fill_fraction) + ','
               + format_sci(row.throwing_power) + ',' + format_sci(row.mean_rate_um_h) + '\n';
    }
    return out;
}

std::string doe_summary_csv(const DoeSummary& summary)
{
    std::string out = "factor,level,metric,value\n";
    auto emit = [&](const std::string& factor, const std::string& level, const DoeAggregate& agg) {
        out += factor + ',' + level + ",cells," + format_sci(static_cast<double>(agg.cells)) + '\n';
        out += factor + ',' + level + ",fill_success_rate," + format_sci(agg.fill_success_rate) + '\n';
        out += factor + ',' + level + ",mean_throwing_power," + format_sci(agg.mean_throwing_power) + '\n';
    };
    for (const auto& [kind, agg] : summary.by_waveform) emit("waveform", std::string(to_string(kind)), agg);
    for (const auto& [power, agg] : summary.by_power) emit("power_w", format_sci(power), agg);
    out += "flag,dc_sufficient,value," + format_sci(summary.dc_sufficient ? 1.0 : 0.0) + '\n';
    out += "flag,angle_invariant,value," + format_sci(summary.angle_invariant ? 1.0 : 0.0) + '\n';
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw OutputError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw OutputError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw OutputError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

namespace {

void ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

void write_outputs(const SimResult& result, const std::filesystem::path& out_dir)
{
    ensure_dir(out_dir);
    // Render everything before touching the directory.
    const auto profile = profile_csv(result);
    const auto summary = summary_csv(result);
    write_file_atomic(out_dir / "profile.csv", profile);
    write_file_atomic(out_dir / "summary.csv", summary);
}

void write_outputs(const DoeTable& table, const std::filesystem::path& out_dir)
{
    ensure_dir(out_dir);
    const auto doe = doe_csv(table);
    const auto summary = doe_summary_csv(summarize(table));
    write_file_atomic(out_dir / "doe.csv", doe);
    write_file_atomic(out_dir / "summary.csv", summary);
}

}  // namespace mvfill
