#include "cavqfi/sweep.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "cavqfi/analytic_qfi.hpp"
#include "cavqfi/boson_algebra.hpp"
#include "cavqfi/errors.hpp"
#include "cavqfi/numeric_oracle.hpp"
#include "cavqfi/spin_algebra.hpp"
#include "cavqfi/value_grammar.hpp"
#include "json.hpp"

namespace cavqfi::sweep {

namespace {

constexpr double kVarianceTolerance = 1e-7;
constexpr double kFidelityTolerance = 1e-6;
constexpr double kFidelityDelta = 1e-3;
constexpr double kBchTolerance = 1e-8;
constexpr int kBchSpins = 2;
constexpr int kBchCutoff = 30;

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

// Single ordered sink; rows are written in the order they are produced.
class RowSink {
public:
    RowSink(std::ostream& out, Format format, std::vector<std::string> columns)
        : out_(out), format_(format), columns_(std::move(columns)) {
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                out_ << (i ? "," : "") << columns_[i];
            }
            out_ << '\n';
        }
    }

    void write(const std::vector<Cell>& cells) {
        if (cells.size() != columns_.size()) {
            throw std::logic_error("row width does not match header");
        }
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out_ << ',';
                std::visit([this](const auto& v) { write_csv(v); }, cells[i]);
            }
            out_ << '\n';
        } else {
            nlohmann::ordered_json row;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::visit([&](const auto& v) { row[columns_[i]] = to_json(v); }, cells[i]);
            }
            out_ << row.dump() << '\n';
        }
        if (!out_) {
            throw IoError("failed writing output row");
        }
    }

private:
    void write_csv(std::monostate) {}
    void write_csv(long long v) { out_ << v; }
    void write_csv(double v) { out_ << format_double(v); }
    void write_csv(const std::string& v) { out_ << csv_escape(v); }
    void write_csv(bool v) { out_ << (v ? "true" : "false"); }

    static nlohmann::ordered_json to_json(std::monostate) { return nullptr; }
    template <typename T>
    static nlohmann::ordered_json to_json(const T& v) { return v; }

    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
};

const std::vector<std::string> kQfiColumns = {
    "case", "N", "alpha", "nbar", "mu", "tau", "theta", "phi", "zenith", "azimuth", "nu",
    "qfi", "gain", "regime", "regime_note", "provenance"};

const std::vector<std::string> kVerifyColumns = {
    "suite", "case", "N", "alpha", "theta", "beta", "phi", "zenith", "azimuth", "nu",
    "analytic", "oracle", "rel_err", "tolerance", "pass", "provenance"};

Cell opt_cell(const std::optional<double>& v) {
    return v ? Cell(*v) : Cell(std::monostate{});
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const std::string& p : parts) {
        out += (out.empty() ? "" : "; ") + p;
    }
    return out;
}

struct QfiRow {
    std::string label;
    int n = 0;
    double alpha = 0.0;
    std::optional<double> mu, tau;
    double theta = 0.0;
    double phi = 0.0;
    std::optional<double> zenith, azimuth, nu;
    double qfi = 0.0;
    analytic::Regime regime = analytic::Regime::exact;
    std::vector<std::string> warnings;
};

void emit(RowSink& sink, Summary& summary, const QfiRow& r) {
    const double nbar = boson::cat_moments(r.alpha, r.phi).mean_n;
    sink.write({r.label, static_cast<long long>(r.n), r.alpha, nbar, opt_cell(r.mu),
                opt_cell(r.tau), r.theta, r.phi, opt_cell(r.zenith), opt_cell(r.azimuth),
                opt_cell(r.nu), r.qfi, analytic::metrological_gain(r.qfi),
                std::string(analytic::to_string(r.regime)), join(r.warnings),
                std::string(analytic::to_string(analytic::Provenance::analytic))});
    ++summary.rows;
    if (!r.warnings.empty()) {
        ++summary.flagged_rows;
    }
}

// ---- key handling ----

using KeySet = std::set<std::string>;

void require_known(const KeyValues& values, const KeySet& allowed, Mode mode) {
    for (const auto& [key, value] : values.entries()) {
        if (!allowed.count(key)) {
            throw ConfigError("key '" + key + "' is not valid in mode " +
                              std::string(to_string(mode)));
        }
    }
}

std::string value_or(const KeyValues& values, const std::string& key, const std::string& fallback) {
    return values.get(key).value_or(fallback);
}

double single_real(const KeyValues& values, const std::string& key, const std::string& fallback) {
    const std::vector<double> v = grammar::parse_real_list(value_or(values, key, fallback));
    if (v.size() != 1) {
        throw ConfigError("key '" + key + "' takes a single value");
    }
    return v.front();
}

int single_int(const KeyValues& values, const std::string& key, const std::string& fallback) {
    const std::vector<int> v = grammar::parse_int_list(value_or(values, key, fallback));
    if (v.size() != 1) {
        throw ConfigError("key '" + key + "' takes a single value");
    }
    return v.front();
}

std::vector<int> spin_list(const KeyValues& values, const std::string& fallback) {
    std::vector<int> n = grammar::parse_int_list(value_or(values, "N", fallback));
    if (n.front() < 1) {
        throw ConfigError("N must be >= 1");
    }
    return n;
}

void nonnegative(const std::vector<double>& v, const char* key) {
    if (v.front() < 0.0) {
        throw ConfigError(std::string(key) + " must be >= 0");
    }
}

Formula parse_formula(const std::string& name) {
    if (name == "exact") return Formula::exact;
    if (name == "short_time") return Formula::short_time;
    if (name == "long_time") return Formula::long_time;
    throw ConfigError("unknown formula '" + name + "' (exact, short_time, long_time)");
}

void read_time_axis(SweepConfig& c, const KeyValues& values, const std::string& theta_default) {
    if (values.has("theta") && values.has("tau")) {
        throw ConfigError("give either theta or tau, not both");
    }
    if (values.has("tau")) {
        c.tau = grammar::parse_real_list(*values.get("tau"));
        nonnegative(c.tau, "tau");
        if (!values.has("mu")) {
            throw ConfigError("tau needs mu");
        }
        c.mu = single_real(values, "mu", "");
    } else {
        if (values.has("mu")) {
            throw ConfigError("mu is only used together with tau");
        }
        c.theta = grammar::parse_real_list(value_or(values, "theta", theta_default));
    }
}

void read_amplitude(SweepConfig& c, const KeyValues& values, const std::string& alpha_default) {
    if (values.has("alpha") && values.has("nbar")) {
        throw ConfigError("give either alpha or nbar, not both");
    }
    if (values.has("nbar")) {
        c.nbar = grammar::parse_real_list(*values.get("nbar"));
        nonnegative(c.nbar, "nbar");
    } else {
        c.alpha = grammar::parse_real_list(value_or(values, "alpha", alpha_default));
        nonnegative(c.alpha, "alpha");
    }
}

void read_phase(SweepConfig& c, const KeyValues& values) {
    const std::string phi = grammar::trim(value_or(values, "phi", "optimal"));
    c.phi_optimal = phi == "optimal";
    if (!c.phi_optimal) {
        c.phi = grammar::parse_real_list(phi);
    }
}

void read_grid_mode(SweepConfig& c, const KeyValues& values) {
    KeySet allowed = {"mode", "N", "alpha", "nbar", "theta", "tau", "mu", "phi", "formula"};
    if (c.mode == Mode::case_b) {
        allowed.insert({"zenith", "azimuth", "nu"});
    }
    require_known(values, allowed, c.mode);
    c.n_spins = spin_list(values, "1:8");
    read_amplitude(c, values, "1");
    read_time_axis(c, values, "0.1");
    read_phase(c, values);
    c.formula = parse_formula(value_or(values, "formula", "exact"));
    if (c.formula != Formula::exact) {
        if (c.mode == Mode::case_a && !c.phi_optimal) {
            throw ConfigError("case_a asymptotic formulas hold at the optimal phase only");
        }
        if (c.formula == Formula::long_time && !c.phi_optimal) {
            throw ConfigError("long_time formulas hold at the optimal phase only");
        }
        if (c.mode == Mode::case_b &&
            (values.has("zenith") || values.has("azimuth") || values.has("nu"))) {
            throw ConfigError("case_b asymptotic formulas fix zenith=pi/2, azimuth=0, nu=pi");
        }
    }
    if (c.mode == Mode::case_b) {
        c.zenith = single_real(values, "zenith", "pi/2");
        c.azimuth = single_real(values, "azimuth", "0");
        c.nu = single_real(values, "nu", "pi");
    }
}

// ---- evaluation ----

struct Point {
    int n;
    double alpha;
    std::optional<double> mu, tau;
    double theta;
};

QfiRow evaluate_case_a(const SweepConfig& c, const Point& p, std::optional<double> phi) {
    QfiRow r;
    r.label = "a";
    r.n = p.n;
    r.alpha = p.alpha;
    r.mu = p.mu;
    r.tau = p.tau;
    r.theta = p.theta;
    switch (c.formula) {
        case Formula::exact:
            if (phi) {
                r.phi = *phi;
                r.qfi = analytic::qfi_case_a(p.alpha, *phi, p.n, p.theta);
            } else {
                const analytic::PhaseOptimum opt = analytic::qfi_case_a_max_phi(p.alpha, p.n, p.theta);
                r.phi = opt.phase;
                r.qfi = opt.qfi;
            }
            break;
        case Formula::short_time: {
            const analytic::Flagged f = analytic::qfi_case_a_short_time(p.alpha, p.n, p.theta);
            r.phi = kPi;
            r.qfi = f.value;
            r.warnings = f.warnings;
            r.regime = analytic::Regime::short_time_asymptotic;
            break;
        }
        case Formula::long_time:
            r.phi = kPi;
            r.qfi = analytic::qfi_case_a_long_time(p.alpha, p.n);
            r.regime = analytic::Regime::long_time_asymptotic;
            break;
    }
    return r;
}

QfiRow evaluate_case_b(const SweepConfig& c, const Point& p, std::optional<double> phi) {
    QfiRow r;
    r.label = "b";
    r.n = p.n;
    r.alpha = p.alpha;
    r.mu = p.mu;
    r.tau = p.tau;
    r.theta = p.theta;
    r.zenith = c.zenith;
    r.azimuth = c.azimuth;
    r.nu = c.nu;
    switch (c.formula) {
        case Formula::exact:
            if (phi) {
                r.phi = *phi;
                r.qfi = analytic::qfi_case_b_exact(p.alpha, *phi, p.n, p.theta, c.zenith, c.azimuth,
                                                   c.nu);
            } else {
                const analytic::PhaseOptimum opt = analytic::qfi_case_b_max_phi(
                    p.alpha, p.n, p.theta, c.zenith, c.azimuth, c.nu);
                r.phi = opt.phase;
                r.qfi = opt.qfi;
            }
            break;
        case Formula::short_time: {
            r.phi = phi.value_or(kPi);
            const analytic::Flagged f = analytic::qfi_case_b_short_time(p.alpha, r.phi, p.n, p.theta);
            r.qfi = f.value;
            r.warnings = f.warnings;
            r.regime = analytic::Regime::short_time_asymptotic;
            break;
        }
        case Formula::long_time:
            r.phi = kPi;
            r.qfi = analytic::qfi_case_b_long_time(p.alpha);
            r.regime = analytic::Regime::long_time_asymptotic;
            break;
    }
    return r;
}

void run_grid(const SweepConfig& c, RowSink& sink, Summary& summary) {
    const std::size_t amp_count = c.nbar.empty() ? c.alpha.size() : c.nbar.size();
    const std::size_t time_count = c.tau.empty() ? c.theta.size() : c.tau.size();
    std::vector<std::optional<double>> phases;
    if (c.phi_optimal) {
        phases.push_back(std::nullopt);
    } else {
        phases.assign(c.phi.begin(), c.phi.end());
    }
    for (int n : c.n_spins) {
        for (std::size_t ia = 0; ia < amp_count; ++ia) {
            for (std::size_t it = 0; it < time_count; ++it) {
                for (const std::optional<double>& phi : phases) {
                    Point p{n, 0.0, std::nullopt, std::nullopt, 0.0};
                    p.alpha = c.nbar.empty() ? c.alpha[ia] : alpha_for_nbar(c.nbar[ia], phi.value_or(kPi));
                    if (c.tau.empty()) {
                        p.theta = c.theta[it];
                    } else {
                        const analytic::ProtocolParams params(*c.mu, c.tau[it]);
                        p.mu = params.mu();
                        p.tau = params.tau();
                        p.theta = params.theta();
                    }
                    emit(sink, summary,
                         c.mode == Mode::case_a ? evaluate_case_a(c, p, phi) : evaluate_case_b(c, p, phi));
                }
            }
        }
    }
}

void run_fig2(const SweepConfig& c, RowSink& sink, Summary& summary) {
    for (int n : c.n_spins) {
        for (double nbar : c.nbar) {
            for (double theta : c.theta) {
                const Point p{n, alpha_for_nbar(nbar, kPi), std::nullopt, std::nullopt, theta};
                emit(sink, summary, evaluate_case_a(c, p, std::nullopt));
            }
        }
    }
}

void run_fig3(const SweepConfig& c, RowSink& sink, Summary& summary) {
    for (int n : c.n_spins) {
        const Fig3Point bind = fig3_binding(c, n);
        for (double tau : c.tau) {
            const analytic::ProtocolParams params(bind.mu, tau);
            const Point p{n, bind.alpha, params.mu(), params.tau(), params.theta()};
            emit(sink, summary, evaluate_case_a(c, p, kPi));
            emit(sink, summary, evaluate_case_b(c, p, kPi));
        }
    }
}

void verify_row(RowSink& sink, Summary& summary, const char* suite, const char* label, int n,
                double alpha, double theta, double phi, const SweepConfig& c, bool spin_cat,
                double analytic_value, double oracle_value, double tolerance) {
    const double rel = std::abs(analytic_value - oracle_value) / std::abs(oracle_value);
    const bool pass = rel < tolerance;
    sink.write({std::string(suite), std::string(label), static_cast<long long>(n), alpha, theta, 0.0,
                phi, spin_cat ? Cell(c.zenith) : Cell(), spin_cat ? Cell(c.azimuth) : Cell(),
                spin_cat ? Cell(c.nu) : Cell(), analytic_value, oracle_value, rel, tolerance, pass,
                std::string(analytic::to_string(analytic::Provenance::oracle))});
    ++summary.rows;
    if (!pass) {
        ++summary.failures;
    }
}

void run_verify(const SweepConfig& c, RowSink& sink, Summary& summary) {
    const spin::SpinCoherentParams cat_params(c.zenith, c.azimuth);
    for (int n : c.n_spins) {
        const spin::SpinSpace spins(n);
        const CVector ground = spin::collective_ground(n).vector;
        const CVector spin_cat = spin::spin_cat_state(spins, cat_params, c.nu).vector;
        for (double alpha : c.alpha) {
            const oracle::ProductSpace space(
                boson::FockSpace(boson::default_cutoff(alpha), alpha), spins, c.max_oracle_dim);
            for (double theta : c.theta) {
                const CMatrix h = oracle::generator_matrix(space, theta);
                for (double phi : c.phi) {
                    const CVector optical = boson::cat_state(space.fock(), alpha, phi).vector;
                    for (bool is_b : {false, true}) {
                        const CVector psi = oracle::product_state(optical, is_b ? spin_cat : ground);
                        const double value =
                            is_b ? analytic::qfi_case_b_exact(alpha, phi, n, theta, c.zenith,
                                                              c.azimuth, c.nu)
                                 : analytic::qfi_case_a(alpha, phi, n, theta);
                        const char* label = is_b ? "b" : "a";
                        verify_row(sink, summary, "variance", label, n, alpha, theta, phi, c, is_b,
                                   value, oracle::qfi_oracle_variance(h, psi), kVarianceTolerance);
                        verify_row(sink, summary, "fidelity", label, n, alpha, theta, phi, c, is_b,
                                   value,
                                   oracle::qfi_oracle_fidelity_richardson(space, psi, theta, 0.0,
                                                                          kFidelityDelta),
                                   kFidelityTolerance);
                    }
                }
            }
        }
    }
    const oracle::ProductSpace bch_space(boson::FockSpace(kBchCutoff, 0.0), spin::SpinSpace(kBchSpins),
                                         c.max_oracle_dim);
    for (double theta : c.bch_theta) {
        for (double beta : c.bch_beta) {
            const double residual = oracle::verify_bch_identity(bch_space, theta, beta);
            const bool pass = residual < kBchTolerance;
            sink.write({std::string("bch"), Cell(), static_cast<long long>(kBchSpins), Cell(), theta,
                        beta, Cell(), Cell(), Cell(), Cell(), Cell(), Cell(), residual, kBchTolerance,
                        pass, std::string(analytic::to_string(analytic::Provenance::oracle))});
            ++summary.rows;
            if (!pass) {
                ++summary.failures;
            }
        }
    }
}

}  // namespace

Mode parse_mode(std::string_view name) {
    const std::string s = grammar::trim(name);
    if (s == "case_a") return Mode::case_a;
    if (s == "case_b") return Mode::case_b;
    if (s == "verify") return Mode::verify;
    if (s == "fig2") return Mode::fig2;
    if (s == "fig3a") return Mode::fig3a;
    if (s == "fig3b") return Mode::fig3b;
    if (s == "point") return Mode::point;
    throw ConfigError("unknown mode '" + s + "'");
}

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::case_a: return "case_a";
        case Mode::case_b: return "case_b";
        case Mode::verify: return "verify";
        case Mode::fig2: return "fig2";
        case Mode::fig3a: return "fig3a";
        case Mode::fig3b: return "fig3b";
        case Mode::point: return "point";
    }
    return "unknown";
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "jsonl") return Format::jsonl;
    throw ConfigError("unknown format '" + std::string(name) + "' (csv, jsonl)");
}

KeyValues KeyValues::parse(std::string_view text, std::string_view origin) {
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        const std::string body = grammar::trim(line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                              ": expected key = value");
        }
        kv.set(grammar::trim(body.substr(0, eq)), grammar::trim(body.substr(eq + 1)));
    }
    return kv;
}

KeyValues KeyValues::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path);
}

void KeyValues::set(const std::string& key, const std::string& value) {
    if (key.empty()) {
        throw ConfigError("empty key");
    }
    if (value.empty()) {
        throw ConfigError("empty value for key '" + key + "'");
    }
    values_[key] = value;
}

void KeyValues::set_assignment(std::string_view assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
    }
    set(grammar::trim(assignment.substr(0, eq)), grammar::trim(assignment.substr(eq + 1)));
}

void KeyValues::merge(const KeyValues& other) {
    for (const auto& [k, v] : other.values_) {
        values_[k] = v;
    }
}

std::optional<std::string> KeyValues::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

SweepConfig make_config(Mode mode, const KeyValues& values) {
    SweepConfig c;
    c.mode = mode;
    bool single_point = false;
    if (mode == Mode::point) {
        single_point = true;
        c.mode = parse_mode(value_or(values, "mode", "case_a"));
        if (c.mode != Mode::case_a && c.mode != Mode::case_b) {
            throw ConfigError("point mode takes mode=case_a or mode=case_b");
        }
    } else if (values.has("mode") && parse_mode(*values.get("mode")) != mode) {
        throw ConfigError("mode key conflicts with the subcommand");
    }

    switch (c.mode) {
        case Mode::case_a:
        case Mode::case_b:
            read_grid_mode(c, values);
            break;
        case Mode::verify:
            require_known(values, {"N", "alpha", "theta", "phi", "zenith", "azimuth", "nu",
                                   "bch_theta", "bch_beta"},
                          mode);
            c.n_spins = spin_list(values, "1:4");
            c.alpha = grammar::parse_real_list(value_or(values, "alpha", "0.5,1.5"));
            nonnegative(c.alpha, "alpha");
            c.theta = grammar::parse_real_list(value_or(values, "theta", "grid:0:2*pi:4"));
            c.phi_optimal = false;
            c.phi = grammar::parse_real_list(value_or(values, "phi", "0,pi/2,pi"));
            c.zenith = single_real(values, "zenith", "0.9");
            c.azimuth = single_real(values, "azimuth", "0.3");
            c.nu = single_real(values, "nu", "1.1");
            c.bch_theta = grammar::parse_real_list(value_or(values, "bch_theta", "0.3,1.7,4.1"));
            c.bch_beta = grammar::parse_real_list(value_or(values, "bch_beta", "-0.4,0.25"));
            break;
        case Mode::fig2:
            require_known(values, {"N", "nbar", "theta"}, mode);
            c.n_spins = spin_list(values, "1:40");
            c.nbar = grammar::parse_real_list(value_or(values, "nbar", "lin:2:20:10"));
            if (!(c.nbar.front() > 1.0)) {
                throw ConfigError("fig2 needs nbar > 1 (odd-cat photon number)");
            }
            c.theta = grammar::parse_real_list(value_or(values, "theta", "1e-4"));
            break;
        case Mode::fig3a:
        case Mode::fig3b: {
            const bool a = c.mode == Mode::fig3a;
            KeySet allowed = {"N", "tau", "alpha_scale", "coupling_hz"};
            if (!a) {
                allowed.insert({"n_ref", "alpha_binding"});
            }
            require_known(values, allowed, mode);
            c.n_spins = spin_list(values, a ? "500000" : "log:1e2:1e6:41");
            c.tau = grammar::parse_real_list(value_or(values, "tau", a ? "log:1e-17:1e-13:41" : "1e-6"));
            nonnegative(c.tau, "tau");
            if (a && c.n_spins.size() != 1) {
                throw ConfigError("fig3a fixes a single N");
            }
            if (!a && c.tau.size() != 1) {
                throw ConfigError("fig3b fixes a single tau");
            }
            c.alpha_scale = single_real(values, "alpha_scale", "100");
            c.coupling_hz = single_real(values, "coupling_hz", "11e3");
            if (!(c.alpha_scale > 0.0) || !(c.coupling_hz > 0.0)) {
                throw ConfigError("alpha_scale and coupling_hz must be > 0");
            }
            c.n_ref = single_int(values, "n_ref", "500000");
            const std::string binding = grammar::trim(value_or(values, "alpha_binding", "fixed"));
            if (binding == "fixed") {
                c.alpha_binding = AlphaBinding::fixed;
            } else if (binding == "per_n") {
                c.alpha_binding = AlphaBinding::per_n;
            } else {
                throw ConfigError("alpha_binding must be fixed or per_n");
            }
            if (a) {
                c.alpha_binding = AlphaBinding::per_n;
            }
            c.formula = Formula::short_time;
            c.zenith = kPi / 2.0;
            c.azimuth = 0.0;
            c.nu = kPi;
            break;
        }
        case Mode::point:
            break;
    }

    if (single_point) {
        const std::size_t amp = c.nbar.empty() ? c.alpha.size() : c.nbar.size();
        const std::size_t time = c.tau.empty() ? c.theta.size() : c.tau.size();
        if (c.n_spins.size() != 1 || amp != 1 || time != 1 || (!c.phi_optimal && c.phi.size() != 1)) {
            throw ConfigError("point mode takes single values only");
        }
    }
    return c;
}

double alpha_for_nbar(double nbar, double phase) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw ConfigError("nbar must be finite and >= 0");
    }
    const bool odd = std::cos(phase) <= -1.0 + 1e-15;
    if (odd && !(nbar > 1.0)) {
        throw ConfigError("the odd cat has nbar > 1");
    }
    if (nbar == 0.0) {
        return 0.0;
    }
    auto excess = [&](double alpha) {
        if (alpha == 0.0) {
            return (odd ? 1.0 : 0.0) - nbar;
        }
        return boson::cat_moments(alpha, phase).mean_n - nbar;
    };
    double hi = std::sqrt(nbar) + 1.0;
    while (excess(hi) < 0.0) {
        hi *= 2.0;
    }
    boost::uintmax_t iterations = 200;
    const auto [lo_root, hi_root] = boost::math::tools::toms748_solve(
        excess, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
    return 0.5 * (lo_root + hi_root);
}

Fig3Point fig3_binding(const SweepConfig& config, int n_spins) {
    const int n_bind = config.alpha_binding == AlphaBinding::per_n ? n_spins : config.n_ref;
    const double alpha = config.alpha_scale * std::sqrt(static_cast<double>(n_bind));
    return {alpha, kTwoPi * config.coupling_hz * alpha};
}

Summary run_sweep(const SweepConfig& config, std::ostream& out) {
    Summary summary;
    if (config.mode == Mode::verify) {
        RowSink sink(out, config.format, kVerifyColumns);
        run_verify(config, sink, summary);
        return summary;
    }
    RowSink sink(out, config.format, kQfiColumns);
    switch (config.mode) {
        case Mode::fig2: run_fig2(config, sink, summary); break;
        case Mode::fig3a:
        case Mode::fig3b: run_fig3(config, sink, summary); break;
        default: run_grid(config, sink, summary); break;
    }
    return summary;
}

int exit_status(const Summary& summary, bool strict_regime) {
    if (summary.failures > 0) {
        return 2;
    }
    if (strict_regime && summary.flagged_rows > 0) {
        return 3;
    }
    return 0;
}

}  // namespace cavqfi::sweep
