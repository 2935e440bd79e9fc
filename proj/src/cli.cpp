#include "mvfill/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mvfill/output.hpp"

namespace mvfill {

std::vector<OracleCase> oracle_suite(const RunConfig& cfg)
{
    const auto& g = cfg.geometry;
    const double r = g.radius;
    const double depth = g.depth;
    const double d = cfg.electrolyte.diffusivity;
    const double dx = g.cell_size();
    const auto n = static_cast<std::size_t>(g.cells);

    std::vector<double> radius(n, r);
    std::vector<double> faces(n + 1, d);
    std::vector<unsigned char> reactive(n, 1);

    std::vector<OracleCase> cases;
    for (double thiele : {0.5, 2.0, 5.66}) {
        const double m = thiele / depth;
        const double rate = 0.5 * m * m * d * r;
        PoreProblem p;
        p.radius = radius;
        p.face_diffusivity = faces;
        p.wall_reactive = reactive;
        p.cell_size = dx;
        p.rate = rate;
        p.film_thickness = 0.0;
        p.bottom_reactive = false;
        p.tolerance = cfg.c_tol;
        const auto sol = solve_pore(p);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double exact = analytic_profile_oracle(r, depth, d, rate, g.cell_center(static_cast<int>(i)));
            worst = std::max(worst, std::abs(sol.conc[i] - exact) / exact);
        }
        cases.push_back({thiele, rate, worst});
    }
    return cases;
}

namespace {

void error_line(std::ostream& err, int code, std::string_view kind, const std::string& message)
{
    std::string flat = message;
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    std::replace(flat.begin(), flat.end(), '"', '\'');
    err << "error: code=" << code << " kind=" << kind << " message=\"" << flat << "\"\n";
}

int run_delta(const RunConfig& cfg, std::ostream& out)
{
    const double hydro = hydrodynamic_delta(cfg.electrolyte, cfg.flow);
    const double acoustic = acoustic_delta(cfg.electrolyte, cfg.field);
    const double effective = effective_delta(cfg.electrolyte, cfg.field, cfg.flow);
    out << "hydrodynamic_delta_m " << format_sci(hydro) << '\n'
        << "acoustic_delta_m " << format_sci(acoustic) << '\n'
        << "effective_delta_m " << format_sci(effective) << '\n'
        << "regime " << (acoustic_regime(cfg.field) ? "acoustic" : "hydrodynamic") << '\n';
    return kExitOk;
}

int run_simulate(const RunConfig& cfg, std::ostream& out)
{
    const auto result = run_simulation(cfg.sim_config());
    write_outputs(result, cfg.out_dir);
    const auto& m = result.metrics;
    out << "outcome " << to_string(m.outcome) << '\n'
        << "fill_fraction " << format_sci(m.fill_fraction) << '\n'
        << "throwing_power " << format_sci(m.throwing_power) << '\n'
        << "wrote " << (cfg.out_dir / "profile.csv").string() << ", " << (cfg.out_dir / "summary.csv").string()
        << '\n';
    return kExitOk;
}

int run_doe(const RunConfig& cfg, std::ostream& out)
{
    const auto table = run_full_factorial(cfg.doe_factors());
    write_outputs(table, cfg.out_dir);
    const auto summary = summarize(table);
    out << "rows " << table.rows.size() << '\n'
        << "dc_sufficient " << (summary.dc_sufficient ? "true" : "false") << '\n'
        << "angle_invariant " << (summary.angle_invariant ? "true" : "false") << '\n'
        << "wrote " << (cfg.out_dir / "doe.csv").string() << ", " << (cfg.out_dir / "summary.csv").string() << '\n';
    return kExitOk;
}

int run_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    double worst = 0.0;
    for (const auto& c : oracle_suite(cfg)) {
        out << "mL " << format_sci(c.thiele) << " max_rel_error " << format_sci(c.max_relative_error) << '\n';
        worst = std::max(worst, c.max_relative_error);
    }
    out << "max_rel_error " << format_sci(worst) << '\n';
    if (!(worst <= kOracleTolerance)) {
        error_line(err, kExitAcceptance, "acceptance",
                   "oracle max relative error " + format_sci(worst) + " exceeds " + format_sci(kOracleTolerance));
        return kExitAcceptance;
    }
    return kExitOk;
}

}  // namespace

int execute(std::string_view command, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (command == "delta") return run_delta(cfg, out);
        if (command == "simulate") return run_simulate(cfg, out);
        if (command == "doe") return run_doe(cfg, out);
        if (command == "oracle-check") return run_oracle_check(cfg, out, err);
        error_line(err, kExitConfig, "usage", "unknown command '" + std::string(command) + "'");
        return kExitConfig;
    } catch (const NumericalError& e) {
        error_line(err, kExitNumerical, "numerical", e.what());
        return kExitNumerical;
    } catch (const OutputError& e) {
        error_line(err, kExitNumerical, "io", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        error_line(err, kExitConfig, "config", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        error_line(err, kExitNumerical, "numerical", e.what());
        return kExitNumerical;
    }
}

}  // namespace mvfill
