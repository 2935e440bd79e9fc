#include "mvfill/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace mvfill {

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line),
      key_(std::move(key))
{
}

MegasonicField RunConfig::default_field()
{
    MegasonicField f;
    f.kappa = kCalibratedKappa;
    return f;
}

std::array<Waveform, 3> RunConfig::default_waveforms()
{
    return {Waveform::dc(300.0), Waveform::pulsed(300.0, 0.010, 0.010),
            Waveform::reverse_pulsed(300.0, 0.020, 900.0, 0.001)};
}

SimConfig RunConfig::sim_config() const
{
    SimConfig s;
    s.electrolyte = electrolyte;
    s.geometry = geometry;
    s.field = field;
    s.flow = flow;
    s.waveform = waveform(sim_waveform);
    s.t_end = t_end;
    s.dr_max_frac = dr_max_frac;
    s.c_tol = c_tol;
    s.r_close_frac = r_close_frac;
    s.fill_frac_target = fill_frac_target;
    s.snapshot_count = snapshots;
    return s;
}

DoeFactors RunConfig::doe_factors() const
{
    DoeFactors f;
    for (auto kind : doe_waveforms) f.waveforms.push_back(waveform(kind));
    f.powers = doe_powers;
    f.angles = doe_angles;
    f.base = sim_config();
    return f;
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Moves the decimal point of a finite decimal literal by `shift` places
// without any binary rounding, so unit prefixes (um <-> m) stay exact.
std::string shift_decimal(std::string_view text, int shift)
{
    std::string sign;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        if (text.front() == '-') sign = "-";
        text.remove_prefix(1);
    }
    std::string digits;
    int point = 0;  // value = 0.digits * 10^point once leading zeros are gone
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        if (text[i] == '.') {
            seen_point = true;
            continue;
        }
        if (digits.empty() && text[i] == '0') {
            if (seen_point) --point;
            continue;
        }
        digits += text[i];
        if (!seen_point) ++point;
    }
    if (i < text.size()) {
        int exponent = 0;
        auto exp_text = text.substr(i + 1);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        point += exponent;
    }
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    if (digits.empty()) return "0";
    point += shift;

    const int n = static_cast<int>(digits.size());
    if (point > 0 && point <= 21) {
        if (point >= n) return sign + digits + std::string(static_cast<std::size_t>(point - n), '0');
        return sign + digits.substr(0, point) + "." + digits.substr(point);
    }
    if (point <= 0 && point > -5) {
        return sign + "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
    }
    const int e = point - 1;
    return sign + digits.substr(0, 1) + (n > 1 ? "." + digits.substr(1) : "") + (e < 0 ? "e-" : "e+")
           + (std::abs(e) < 10 ? "0" : "") + std::to_string(std::abs(e));
}

// Shortest round-trip text of `value`, expressed in units of 10^-decimals.
std::string format_scaled(double value, int decimals)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return shift_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)), decimals);
}

std::string_view angle_model_token(AngleModel m) { return m == AngleModel::None ? "NONE" : "COSINE"; }
std::string_view profile_token(StreamingProfile p)
{
    return p == StreamingProfile::Uniform ? "UNIFORM" : "LINEAR_DECAY";
}

struct Context {
    int line;
    std::string key;  // section.key

    [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line, key, key + ": " + what); }

    double number(std::string_view text) const
    {
        double v = 0.0;
        const auto* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v)) fail("expected a number, got '" + std::string(text) + "'");
        return v;
    }

    int integer(std::string_view text) const
    {
        int v = 0;
        const auto* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc{} || ptr != end) fail("expected an integer, got '" + std::string(text) + "'");
        return v;
    }

    std::vector<double> numbers(std::string_view text) const
    {
        std::vector<double> out;
        for (auto item : split(text)) out.push_back(number(item));
        if (out.empty()) fail("list must not be empty");
        return out;
    }

    static std::vector<std::string_view> split(std::string_view text)
    {
        std::vector<std::string_view> out;
        while (!text.empty()) {
            const auto comma = text.find(',');
            const auto item = trim(text.substr(0, comma));
            if (!item.empty()) out.push_back(item);
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        return out;
    }

    void require(bool ok, const char* rule) const
    {
        if (!ok) fail(std::string("must satisfy ") + rule);
    }
};

struct Key {
    std::string name;  // without section
    std::function<void(RunConfig&, std::string_view, const Context&)> set;
    std::function<std::string(const RunConfig&)> get;
};

struct Section {
    std::string name;
    std::vector<Key> keys;
};

using Getter = std::function<double(const RunConfig&)>;
using Setter = std::function<void(RunConfig&, double)>;
using Rule = std::function<bool(double)>;

// `decimals` is the power of ten between the key's unit and SI (6 for um).
Key number_key(std::string name, int decimals, Getter get, Setter set, Rule rule, const char* rule_text)
{
    return Key{
        std::move(name),
        [=](RunConfig& cfg, std::string_view text, const Context& ctx) {
            const double shown = ctx.number(text);
            ctx.require(rule(shown), rule_text);
            set(cfg, decimals == 0 ? shown : ctx.number(shift_decimal(text, -decimals)));
        },
        [=](const RunConfig& cfg) { return format_scaled(get(cfg), decimals); },
    };
}

Key integer_key(std::string name, std::function<int&(RunConfig&)> ref, Rule rule, const char* rule_text)
{
    return Key{
        std::move(name),
        [=](RunConfig& cfg, std::string_view text, const Context& ctx) {
            const int v = ctx.integer(text);
            ctx.require(rule(v), rule_text);
            ref(cfg) = v;
        },
        [=](const RunConfig& cfg) { return std::to_string(ref(const_cast<RunConfig&>(cfg))); },
    };
}

const auto positive = [](double v) { return v > 0.0; };
const auto non_negative = [](double v) { return v >= 0.0; };

std::vector<Key> waveform_keys(WaveformKind kind)
{
    const auto k = static_cast<std::size_t>(kind);
    auto wf = [k](RunConfig& c) -> Waveform& { return c.waveforms[k]; };
    auto cwf = [k](const RunConfig& c) -> const Waveform& { return c.waveforms[k]; };
    return {
        number_key("i_forward_a_m2", 0, [=](const RunConfig& c) { return cwf(c).i_forward; },
                   [=](RunConfig& c, double v) { wf(c).i_forward = v; }, positive, "> 0"),
        number_key("t_forward_s", 0, [=](const RunConfig& c) { return cwf(c).t_forward; },
                   [=](RunConfig& c, double v) { wf(c).t_forward = v; }, positive, "> 0"),
        number_key("t_off_s", 0, [=](const RunConfig& c) { return cwf(c).t_off; },
                   [=](RunConfig& c, double v) { wf(c).t_off = v; }, non_negative, ">= 0"),
        number_key("i_reverse_a_m2", 0, [=](const RunConfig& c) { return cwf(c).i_reverse; },
                   [=](RunConfig& c, double v) { wf(c).i_reverse = v; }, non_negative, ">= 0"),
        number_key("t_reverse_s", 0, [=](const RunConfig& c) { return cwf(c).t_reverse; },
                   [=](RunConfig& c, double v) { wf(c).t_reverse = v; }, non_negative, ">= 0"),
    };
}

std::string join_numbers(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_scaled(values[i], 0);
    }
    return out;
}

const std::vector<Section>& schema()
{
    static const std::vector<Section> sections = [] {
        std::vector<Section> s;
#define MV_NUM(section_field, key, decimals, member, rule, text)                                        \
    number_key(key, decimals, [](const RunConfig& c) { return c.section_field.member; },                \
               [](RunConfig& c, double v) { c.section_field.member = v; }, rule, text)

        s.push_back({"electrolyte",
                     {
                         MV_NUM(electrolyte, "c_bulk_mol_m3", 0, c_bulk, positive, "> 0"),
                         MV_NUM(electrolyte, "diffusivity_m2_s", 0, diffusivity, positive, "> 0"),
                         MV_NUM(electrolyte, "viscosity_m2_s", 0, viscosity, positive, "> 0"),
                         integer_key("charge_number", [](RunConfig& c) -> int& { return c.electrolyte.charge; },
                                     [](double v) { return v >= 1; }, ">= 1"),
                         MV_NUM(electrolyte, "activity_coeff", 0, gamma, positive, "> 0"),
                         MV_NUM(electrolyte, "temperature_k", 0, temperature, positive, "> 0"),
                         MV_NUM(electrolyte, "e0_v", 0, e0, [](double) { return true; }, "any"),
                         MV_NUM(electrolyte, "molar_mass_kg_mol", 0, molar_mass, positive, "> 0"),
                         MV_NUM(electrolyte, "density_kg_m3", 0, density, positive, "> 0"),
                         MV_NUM(electrolyte, "i0_a_m2", 0, i0, non_negative, ">= 0"),
                         MV_NUM(electrolyte, "alpha", 0, alpha, [](double v) { return v > 0.0 && v < 1.0; },
                                "0 < alpha < 1"),
                     }});
        s.push_back({"geometry",
                     {
                         MV_NUM(geometry, "radius_um", 6, radius, positive, "> 0"),
                         MV_NUM(geometry, "depth_um", 6, depth, positive, "> 0"),
                         integer_key("cells", [](RunConfig& c) -> int& { return c.geometry.cells; },
                                     [](double v) { return v >= 16; }, ">= 16"),
                         MV_NUM(geometry, "seed_coverage", 0, seed_coverage,
                                [](double v) { return v > 0.0 && v <= 1.0; }, "0 < seed_coverage <= 1"),
                     }});
        s.push_back({"field",
                     {
                         MV_NUM(field, "freq_hz", 0, frequency, positive, "> 0"),
                         MV_NUM(field, "power_w", 0, power, non_negative, ">= 0"),
                         MV_NUM(field, "angle_deg", 0, angle_deg, [](double v) { return v >= 0.0 && v < 90.0; },
                                "0 <= angle_deg < 90"),
                         MV_NUM(field, "kappa", 0, kappa, non_negative, ">= 0"),
                         MV_NUM(field, "p_ref_w", 0, p_ref, positive, "> 0"),
                         Key{"angle_model",
                             [](RunConfig& c, std::string_view v, const Context& ctx) {
                                 if (v == "NONE") c.field.angle_model = AngleModel::None;
                                 else if (v == "COSINE") c.field.angle_model = AngleModel::Cosine;
                                 else ctx.fail("expected NONE or COSINE");
                             },
                             [](const RunConfig& c) { return std::string(angle_model_token(c.field.angle_model)); }},
                         Key{"profile",
                             [](RunConfig& c, std::string_view v, const Context& ctx) {
                                 if (v == "UNIFORM") c.field.profile = StreamingProfile::Uniform;
                                 else if (v == "LINEAR_DECAY") c.field.profile = StreamingProfile::LinearDecay;
                                 else ctx.fail("expected UNIFORM or LINEAR_DECAY");
                             },
                             [](const RunConfig& c) { return std::string(profile_token(c.field.profile)); }},
                     }});
        s.push_back({"flow",
                     {
                         MV_NUM(flow, "velocity_m_s", 0, velocity, positive, "> 0"),
                         MV_NUM(flow, "distance_m", 0, distance, positive, "> 0"),
                     }});
#undef MV_NUM
        s.push_back({"waveform.DC", waveform_keys(WaveformKind::DC)});
        s.push_back({"waveform.PP", waveform_keys(WaveformKind::PP)});
        s.push_back({"waveform.RP", waveform_keys(WaveformKind::RP)});

#define MV_SIM(key, member, rule, text)                                                                 \
    number_key(key, 0, [](const RunConfig& c) { return c.member; },                                 \
               [](RunConfig& c, double v) { c.member = v; }, rule, text)
        s.push_back({"sim",
                     {
                         Key{"waveform",
                             [](RunConfig& c, std::string_view v, const Context& ctx) {
                                 try {
                                     c.sim_waveform = parse_waveform_kind(v);
                                 } catch (const std::invalid_argument& e) {
                                     ctx.fail(e.what());
                                 }
                             },
                             [](const RunConfig& c) { return std::string(to_string(c.sim_waveform)); }},
                         MV_SIM("t_end_s", t_end, positive, "> 0"),
                         MV_SIM("dr_max_frac", dr_max_frac, [](double v) { return v > 0.0 && v <= 0.05; },
                                "0 < dr_max_frac <= 0.05"),
                         MV_SIM("c_tol", c_tol, positive, "> 0"),
                         MV_SIM("r_close_frac", r_close_frac, [](double v) { return v > 0.0 && v < 0.1; },
                                "0 < r_close_frac < 0.1"),
                         MV_SIM("fill_frac_target", fill_frac_target, [](double v) { return v > 0.0 && v <= 1.0; },
                                "0 < fill_frac_target <= 1"),
                         integer_key("snapshots", [](RunConfig& c) -> int& { return c.snapshots; },
                                     [](double v) { return v >= 2; }, ">= 2"),
                     }});
#undef MV_SIM
        s.push_back({"doe",
                     {
                         Key{"waveforms",
                             [](RunConfig& c, std::string_view v, const Context& ctx) {
                                 c.doe_waveforms.clear();
                                 for (auto item : Context::split(v)) {
                                     try {
                                         c.doe_waveforms.push_back(parse_waveform_kind(item));
                                     } catch (const std::invalid_argument& e) {
                                         ctx.fail(e.what());
                                     }
                                 }
                                 if (c.doe_waveforms.empty()) ctx.fail("list must not be empty");
                             },
                             [](const RunConfig& c) {
                                 std::string out;
                                 for (std::size_t i = 0; i < c.doe_waveforms.size(); ++i) {
                                     if (i) out += ", ";
                                     out += to_string(c.doe_waveforms[i]);
                                 }
                                 return out;
                             }},
                         Key{"powers_w",
                             [](RunConfig& c, std::string_view v, const Context& ctx) {
                                 c.doe_powers = ctx.numbers(v);
                                 for (double p : c.doe_powers) ctx.require(p >= 0.0, ">= 0");
                             },
                             [](const RunConfig& c) { return join_numbers(c.doe_powers); }},
                         Key{"angles_deg",
                             [](RunConfig& c, std::string_view v, const Context& ctx) {
                                 c.doe_angles = ctx.numbers(v);
                                 for (double a : c.doe_angles) ctx.require(a >= 0.0 && a < 90.0, "0 <= angle < 90");
                             },
                             [](const RunConfig& c) { return join_numbers(c.doe_angles); }},
                     }});
        return s;
    }();
    return sections;
}

}  // namespace

RunConfig parse_config_text(std::string_view text)
{
    RunConfig cfg;
    const Section* section = nullptr;
    std::vector<std::string> seen;
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view raw = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;

        const auto hash = raw.find('#');
        std::string_view line = trim(raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "", "malformed section header '" + std::string(line) + "'");
            const auto name = trim(line.substr(1, line.size() - 2));
            const auto& sections = schema();
            auto it = std::find_if(sections.begin(), sections.end(), [&](const Section& s) { return s.name == name; });
            if (it == sections.end()) throw ConfigError(line_no, std::string(name), "unknown section [" + std::string(name) + "]");
            section = &*it;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "", "expected 'key = value', got '" + std::string(line) + "'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!section) {
            throw ConfigError(line_no, std::string(key), "key '" + std::string(key) + "' outside of any section");
        }
        const std::string full = section->name + "." + std::string(key);
        auto it = std::find_if(section->keys.begin(), section->keys.end(), [&](const Key& k) { return k.name == key; });
        if (it == section->keys.end()) throw ConfigError(line_no, full, "unknown key " + full);
        if (std::find(seen.begin(), seen.end(), full) != seen.end()) {
            throw ConfigError(line_no, full, "duplicate key " + full);
        }
        seen.push_back(full);
        if (value.empty()) throw ConfigError(line_no, full, full + ": missing value");
        it->set(cfg, value, Context{line_no, full});
    }

    for (auto kind : {WaveformKind::DC, WaveformKind::PP, WaveformKind::RP}) {
        const auto report = validate_waveform(cfg.waveform(kind));
        if (!report.ok()) {
            const std::string name = "waveform." + std::string(to_string(kind));
            throw ConfigError(0, name, name + ": " + report.errors.front());
        }
    }
    try {
        check(cfg.sim_config());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, "", e.what());
    }
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "", "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string dump_config(const RunConfig& cfg)
{
    std::ostringstream out;
    bool first = true;
    for (const auto& section : schema()) {
        if (!first) out << '\n';
        first = false;
        out << '[' << section.name << "]\n";
        for (const auto& key : section.keys) out << key.name << " = " << key.get(cfg) << '\n';
    }
    return out.str();
}

}  // namespace mvfill
