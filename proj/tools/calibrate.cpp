// Sweeps the streaming-enhancement coefficient for the 125 W DC scenario and
// writes the calibration file.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "mvfill/calibration.hpp"
#include "mvfill/cli.hpp"
#include "mvfill/output.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Calibrate the streaming enhancement coefficient"};
    std::string config_path;
    std::string write_path;
    double lo = 0.5, hi = 20.0, step = 0.5;
    app.add_option("--config", config_path, "Base configuration");
    app.add_option("--write", write_path, "Write the calibration file here");
    app.add_option("--lo", lo, "Smallest kappa");
    app.add_option("--hi", hi, "Largest kappa");
    app.add_option("--step", step, "Sweep increment");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = config_path.empty() ? mvfill::RunConfig{} : mvfill::parse_config(config_path);
        auto base = cfg.sim_config();
        base.waveform = cfg.waveform(mvfill::WaveformKind::DC);
        const auto cal = mvfill::calibrate_kappa(base, lo, hi, step);
        const auto text = mvfill::calibration_file(cal, base);
        std::cout << text;
        if (!write_path.empty()) mvfill::write_file_atomic(write_path, text);
        return mvfill::kExitOk;
    } catch (const mvfill::ConfigError& e) {
        std::cerr << "error: code=1 kind=config message=\"" << e.what() << "\"\n";
        return mvfill::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: code=2 kind=numerical message=\"" << e.what() << "\"\n";
        return mvfill::kExitNumerical;
    }
}
