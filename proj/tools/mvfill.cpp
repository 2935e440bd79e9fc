// Command-line front end: delta | simulate | doe | oracle-check.

#include <iostream>

#include "CLI11.hpp"
#include "mvfill/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Megasonic microvia fill simulator"};
    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    bool dump = false;
    app.add_option("command", command, "delta | simulate | doe | oracle-check")
        ->check(CLI::IsMember({"delta", "simulate", "doe", "oracle-check"}));
    app.add_option("--config", config_path, "Configuration file (defaults apply when omitted)");
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--dump-config", dump, "Print the effective configuration and exit");

    try {
        app.parse(argc, argv);
        if (command.empty() && !dump) throw CLI::RequiredError("command");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: code=1 kind=usage message=\"" << e.what() << "\"\n";
        return mvfill::kExitConfig;
    }

    mvfill::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = mvfill::parse_config(config_path);
    } catch (const mvfill::ConfigError& e) {
        std::cerr << "error: code=1 kind=config key=" << (e.key().empty() ? "-" : e.key()) << " line=" << e.line()
                  << " message=\"" << e.what() << "\"\n";
        return mvfill::kExitConfig;
    }
    cfg.out_dir = out_dir;

    if (dump) {
        std::cout << mvfill::dump_config(cfg);
        return mvfill::kExitOk;
    }
    return mvfill::execute(command, cfg, std::cout, std::cerr);
}
