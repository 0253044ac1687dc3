#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// Grid sweeps, figure data and oracle verification runs driven by flat
// key=value configuration.
namespace cavqfi::sweep {

enum class Mode { case_a, case_b, verify, fig2, fig3a, fig3b, point };
enum class Format { csv, jsonl };
enum class Formula { exact, short_time, long_time };
enum class AlphaBinding { fixed, per_n };

Mode parse_mode(std::string_view name);
std::string_view to_string(Mode mode);
Format parse_format(std::string_view name);

/// Ordered key=value store. Later assignments win.
class KeyValues {
public:
    /// Lines of "key = value"; '#' starts a comment, blank lines are skipped.
    static KeyValues parse(std::string_view text, std::string_view origin = "<text>");
    static KeyValues load_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    /// "key=value" as given on the command line.
    void set_assignment(std::string_view assignment);
    void merge(const KeyValues& other);

    std::optional<std::string> get(const std::string& key) const;
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

struct SweepConfig {
    Mode mode = Mode::case_a;
    Format format = Format::csv;
    Formula formula = Formula::exact;
    bool strict_regime = false;
    int max_oracle_dim = 20000;

    std::vector<int> n_spins;
    // Exactly one of alpha / nbar is populated.
    std::vector<double> alpha;
    std::vector<double> nbar;
    // Exactly one of theta / tau is populated; tau needs mu.
    std::vector<double> theta;
    std::vector<double> tau;
    std::optional<double> mu;
    bool phi_optimal = true;
    std::vector<double> phi;

    double zenith = 0.0;
    double azimuth = 0.0;
    double nu = 0.0;

    // Figure bindings: alpha = alpha_scale * sqrt(N), mu = 2 pi coupling_hz alpha.
    double alpha_scale = 100.0;
    double coupling_hz = 11e3;
    int n_ref = 500000;
    AlphaBinding alpha_binding = AlphaBinding::fixed;

    // Verify mode: BCH identity pairs evaluated at N = 2, cutoff 30.
    std::vector<double> bch_theta;
    std::vector<double> bch_beta;
};

/// Builds a validated config for a mode from key=value pairs, applying the
/// mode defaults. Unknown or inapplicable keys throw ConfigError.
SweepConfig make_config(Mode mode, const KeyValues& values);

/// Inverts the cat photon number <a^dag a>(alpha, phase) = nbar for alpha.
double alpha_for_nbar(double nbar, double phase);

struct Summary {
    long rows = 0;
    long flagged_rows = 0;   // rows carrying regime warnings
    long failures = 0;       // verify rows outside tolerance
};

/// Evaluates the grid sequentially in lexicographic order and streams rows
/// to out.
Summary run_sweep(const SweepConfig& config, std::ostream& out);

/// 0 success, 2 verify failures, 3 regime warnings under strict mode.
int exit_status(const Summary& summary, bool strict_regime);

/// fig3 bindings for one spin number: {alpha, mu}.
struct Fig3Point {
    double alpha;
    double mu;
};
Fig3Point fig3_binding(const SweepConfig& config, int n_spins);

}  // namespace cavqfi::sweep
