#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cavqfi/errors.hpp"
#include "cavqfi/sweep.hpp"

namespace {

struct CommonOptions {
    std::string config;
    std::string out;
    std::string format = "csv";
    int max_oracle_dim = 20000;
    bool strict_regime = false;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config, "key=value config file");
    cmd->add_option("--out", opts.out, "output path (default stdout)");
    cmd->add_option("--format", opts.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--max-oracle-dim", opts.max_oracle_dim, "largest oracle product dimension")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--strict-regime", opts.strict_regime, "treat regime warnings as errors");
    cmd->add_option("overrides", opts.overrides, "key=value overrides");
}

int run(cavqfi::sweep::Mode mode, const CommonOptions& opts) {
    using namespace cavqfi::sweep;
    KeyValues values;
    if (!opts.config.empty()) {
        values = KeyValues::load_file(opts.config);
    }
    for (const std::string& o : opts.overrides) {
        values.set_assignment(o);
    }
    if (mode == Mode::case_a) {  // "sweep": case taken from the mode key
        const auto m = values.get("mode");
        if (!m) {
            throw cavqfi::ConfigError("sweep needs mode=case_a or mode=case_b");
        }
        mode = parse_mode(*m);
        if (mode != Mode::case_a && mode != Mode::case_b) {
            throw cavqfi::ConfigError("sweep takes mode=case_a or mode=case_b");
        }
    }
    SweepConfig config = make_config(mode, values);
    config.format = parse_format(opts.format);
    config.max_oracle_dim = opts.max_oracle_dim;
    config.strict_regime = opts.strict_regime;

    Summary summary;
    if (opts.out.empty()) {
        summary = run_sweep(config, std::cout);
        std::cout.flush();
    } else {
        std::ofstream file(opts.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw cavqfi::IoError("cannot open output '" + opts.out + "'");
        }
        summary = run_sweep(config, file);
        file.close();
        if (!file) {
            throw cavqfi::IoError("failed closing output '" + opts.out + "'");
        }
    }
    std::cerr << "rows=" << summary.rows << " flagged=" << summary.flagged_rows
              << " failures=" << summary.failures << '\n';
    return exit_status(summary, config.strict_regime);
}

}  // namespace

int main(int argc, char** argv) {
    using cavqfi::sweep::Mode;
    CLI::App app{"QFI sweeps, figure data and oracle verification for the cavity time-reversal protocol"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        Mode mode;
    };
    const std::vector<Command> commands = {
        {"sweep", "grid sweep (mode=case_a|case_b)", Mode::case_a},
        {"verify", "analytic vs oracle comparison", Mode::verify},
        {"fig2", "max-phase QFI over (N, nbar)", Mode::fig2},
        {"fig3a", "gain vs tau at fixed N", Mode::fig3a},
        {"fig3b", "gain vs N at fixed tau", Mode::fig3b},
        {"point", "single evaluation", Mode::point},
    };
    std::vector<CommonOptions> options(commands.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        subs.push_back(app.add_subcommand(commands[i].name, commands[i].help));
        add_common(subs.back(), options[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (std::size_t i = 0; i < commands.size(); ++i) {
            if (subs[i]->parsed()) {
                return run(commands[i].mode, options[i]);
            }
        }
    } catch (const cavqfi::DimensionOverflow& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cavqfi::InadequateCutoff& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cavqfi::InconsistentMoments& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
