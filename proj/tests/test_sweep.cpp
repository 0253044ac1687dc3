#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cavqfi/analytic_qfi.hpp"
#include "cavqfi/errors.hpp"
#include "cavqfi/sweep.hpp"
#include "cavqfi/value_grammar.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace cavqfi;
using namespace cavqfi::sweep;

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        FAIL("missing column " << name);
        return -1;
    }
    double num(std::size_t row, const std::string& name) const { return std::stod(rows[row][col(name)]); }
    const std::string& str(std::size_t row, const std::string& name) const { return rows[row][col(name)]; }
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    out.push_back(cell);
    return out;
}

Table run_csv(Mode mode, const std::string& text, Summary* summary = nullptr) {
    const SweepConfig config = make_config(mode, KeyValues::parse(text));
    std::ostringstream out;
    const Summary s = run_sweep(config, out);
    if (summary) *summary = s;
    std::istringstream in(out.str());
    Table t;
    std::string line;
    std::getline(in, line);
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        t.rows.push_back(split_csv_line(line));
    }
    return t;
}

std::string run_text(Mode mode, const std::string& text, Format format = Format::csv) {
    SweepConfig config = make_config(mode, KeyValues::parse(text));
    config.format = format;
    std::ostringstream out;
    run_sweep(config, out);
    return out.str();
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("scalar and list grammar") {
    using namespace grammar;
    CHECK(parse_scalar("pi") == kPi);
    CHECK(parse_scalar(" 2*pi ") == 2 * kPi);
    CHECK(parse_scalar("pi/4") == kPi / 4);
    CHECK(parse_scalar("3*pi/2") == 3 * kPi / 2);
    CHECK(parse_scalar("-1.5e-3") == -1.5e-3);
    CHECK_THROWS_AS(parse_scalar("2pi"), ConfigError);
    CHECK_THROWS_AS(parse_scalar("abc"), ConfigError);
    CHECK_THROWS_AS(parse_scalar(""), ConfigError);

    CHECK(parse_real_list("0,pi/2,pi") == std::vector<double>{0, kPi / 2, kPi});
    CHECK(parse_real_list("lin:0:1:5") == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
    const std::vector<double> g = parse_real_list("grid:0:2*pi:4");
    CHECK(g.size() == 4);
    CHECK(g[3] == doctest::Approx(1.5 * kPi));
    const std::vector<double> l = parse_real_list("log:1e-3:1e1:5");
    CHECK(l.front() == 1e-3);
    CHECK(l.back() == 10.0);
    CHECK(l[2] == doctest::Approx(0.1));
    CHECK_THROWS_AS(parse_real_list("1,0.5"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("1,1"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("lin:1:0:3"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("log:0:1:3"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("foo:0:1:3"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("1,inf"), ConfigError);

    CHECK(parse_int_list("1:4") == std::vector<int>{1, 2, 3, 4});
    CHECK(parse_int_list("2,5,9") == std::vector<int>{2, 5, 9});
    CHECK(parse_int_list("5e5") == std::vector<int>{500000});
    const std::vector<int> li = parse_int_list("log:1:10:20");
    CHECK(li.front() == 1);
    CHECK(li.back() == 10);
    for (std::size_t i = 1; i < li.size(); ++i) CHECK(li[i] > li[i - 1]);
    CHECK_THROWS_AS(parse_int_list("1.5"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("4:1"), ConfigError);
}

TEST_CASE("key-value files") {
    const KeyValues kv = KeyValues::parse("# comment\n N = 1:3  # trailing\n\nalpha=2\nalpha = 3\n");
    CHECK(*kv.get("N") == "1:3");
    CHECK(*kv.get("alpha") == "3");
    CHECK_FALSE(kv.get("theta"));
    CHECK_THROWS_AS(KeyValues::parse("novalue\n"), ConfigError);
    CHECK_THROWS_AS(KeyValues::parse("x =\n"), ConfigError);
    KeyValues over = kv;
    over.set_assignment("alpha=0.5");
    CHECK(*over.get("alpha") == "0.5");
    CHECK_THROWS_AS(over.set_assignment("alpha"), ConfigError);
    CHECK_THROWS_AS(KeyValues::load_file("/nonexistent/config.txt"), ConfigError);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("zenith=1")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("bogus=1")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("theta=1\ntau=1\nmu=1")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("tau=1")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("alpha=1\nnbar=2")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("N=0:3")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("formula=short_time\nphi=0")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_b, KeyValues::parse("formula=long_time\nnu=1")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::case_a, KeyValues::parse("mode=case_b")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::point, KeyValues::parse("N=1,2")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::fig3a, KeyValues::parse("N=1,2")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::fig3b, KeyValues::parse("tau=1e-6,1e-5")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::fig3b, KeyValues::parse("alpha_binding=sometimes")), ConfigError);
    CHECK_THROWS_AS(make_config(Mode::fig2, KeyValues::parse("nbar=0.5,2")), ConfigError);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
    CHECK_THROWS_AS(parse_mode("case_c"), ConfigError);
    const SweepConfig c = make_config(Mode::case_b, KeyValues::parse("tau=1e-3\nmu=2"));
    CHECK(c.zenith == kPi / 2);
    CHECK(c.nu == kPi);
    CHECK(*c.mu == 2.0);
}

TEST_CASE("nbar inversion") {
    for (double phase : {0.0, 1.0, 2.5, kPi}) {
        for (double nbar : {1.5, 4.0, 50.0}) {
            const double alpha = alpha_for_nbar(nbar, phase);
            CHECK(boson::cat_moments(alpha, phase).mean_n == doctest::Approx(nbar).epsilon(1e-12));
        }
    }
    CHECK(alpha_for_nbar(0.0, 0.0) == 0.0);
    CHECK(alpha_for_nbar(0.01, 0.0) > 0.0);
    CHECK_THROWS_AS(alpha_for_nbar(0.9, kPi), ConfigError);
}

TEST_CASE("single point at zero amplitude") {
    const Table t = run_csv(Mode::point, "alpha=0\nN=7\ntheta=1.3");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.num(0, "qfi") == 4.0);
    CHECK(t.num(0, "gain") == 1.0);
    CHECK(t.str(0, "provenance") == "analytic");
    CHECK(t.str(0, "regime") == "exact");
}

TEST_CASE("grid rows are lexicographic and match the closed forms") {
    const Table t = run_csv(Mode::case_b, "N=2,3\nalpha=0.5,1\ntheta=0.1,0.2\nphi=0,pi\nzenith=0.9\nazimuth=0.3\nnu=1.1");
    REQUIRE(t.rows.size() == 16);
    std::size_t r = 0;
    for (int n : {2, 3}) {
        for (double alpha : {0.5, 1.0}) {
            for (double theta : {0.1, 0.2}) {
                for (double phi : {0.0, kPi}) {
                    CHECK(t.num(r, "N") == n);
                    CHECK(t.num(r, "alpha") == alpha);
                    CHECK(t.num(r, "theta") == theta);
                    CHECK(t.num(r, "qfi") ==
                          analytic::qfi_case_b_exact(alpha, phi, n, theta, 0.9, 0.3, 1.1));
                    ++r;
                }
            }
        }
    }
    // Full-precision round trip.
    CHECK(t.str(0, "alpha") == "5.0000000000000000e-01");
}

TEST_CASE("tau axis and asymptotic formulas") {
    Summary s;
    const Table t = run_csv(Mode::case_a, "N=10,1000\nalpha=2\ntau=1e-3,1e-2\nmu=2\nformula=short_time", &s);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.num(0, "theta") == 2e-3);
    CHECK(t.num(0, "mu") == 2.0);
    CHECK(t.num(0, "qfi") == analytic::qfi_case_a_short_time(2.0, 10, 2.0, 1e-3).value);
    CHECK(t.str(0, "regime") == "short_time_asymptotic");
    CHECK(t.str(0, "regime_note").empty());
    CHECK_FALSE(t.str(3, "regime_note").empty());  // N theta^2 = 0.4
    CHECK(s.flagged_rows == 1);
    CHECK(exit_status(s, false) == 0);
    CHECK(exit_status(s, true) == 3);

    const Table lt = run_csv(Mode::case_a, "N=4,5\nalpha=3\ntheta=pi\nformula=long_time");
    CHECK(lt.num(0, "qfi") == doctest::Approx(76.0).epsilon(1e-6));
    CHECK(lt.num(1, "qfi") == doctest::Approx(148.0).epsilon(1e-6));
}

TEST_CASE("fig2 cells equal the phase-optimized QFI") {
    const Table t = run_csv(Mode::fig2, "N=1:6\nnbar=lin:1.5:9:4");
    REQUIRE(t.rows.size() == 24);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double alpha = t.num(r, "alpha");
        const int n = static_cast<int>(t.num(r, "N"));
        CHECK(t.num(r, "theta") == 1e-4);
        CHECK(t.num(r, "qfi") == analytic::qfi_case_a_max_phi(alpha, n, 1e-4).qfi);
        CHECK(t.num(r, "nbar") == doctest::Approx(alpha * alpha / std::tanh(alpha * alpha)).epsilon(1e-12));
        CHECK(t.num(r, "qfi") >= 4.0);
    }
}

TEST_CASE("fig3a series") {
    const Table t = run_csv(Mode::fig3a, "tau=0,1e-30,log:1e-17:1e-14:7");
    REQUIRE(t.rows.size() == 18);
    const double alpha = 100.0 * std::sqrt(5e5);
    const double mu = 2.0 * kPi * 11e3 * alpha;
    for (std::size_t r = 0; r < t.rows.size(); r += 2) {
        CHECK(t.str(r, "case") == "a");
        CHECK(t.str(r + 1, "case") == "b");
        CHECK(t.num(r, "alpha") == doctest::Approx(alpha).epsilon(1e-15));
        CHECK(t.num(r, "mu") / (2.0 * kPi * t.num(r, "alpha")) == doctest::Approx(11e3).epsilon(1e-15));
        CHECK(t.num(r, "gain") >= 1.0 - 1e-12);
        if (r >= 4) {  // below tau ~ 1e-20 the case-b excess is under double resolution
            CHECK(t.num(r + 1, "gain") > t.num(r, "gain"));
        }
    }
    // tau -> 0: gain -> 1
    CHECK(t.num(0, "gain") == 1.0);
    CHECK(t.num(1, "gain") == 1.0);
    CHECK(t.num(2, "gain") == doctest::Approx(1.0).epsilon(1e-12));
    // Mid-grid row recomputed by hand (long double).
    const std::size_t mid = 10;
    const long double th = static_cast<long double>(mu) * static_cast<long double>(t.num(mid, "tau"));
    const long double a2 = static_cast<long double>(alpha) * alpha;
    const long double n = 5e5L;
    const long double fa = 4.0L + 4.0L * a2 * n * th * th;  // coth a^2 = 1 to long-double precision
    const long double fb = 4.0L + 4.0L * a2 * n * n * th * th;
    CHECK(oracles::rel_err(t.num(mid, "qfi"), static_cast<double>(fa)) < 1e-12);
    CHECK(oracles::rel_err(t.num(mid + 1, "qfi"), static_cast<double>(fb)) < 1e-12);
    CHECK(oracles::rel_err(t.num(mid, "theta"), static_cast<double>(th)) < 1e-15);
}

TEST_CASE("fig3b slopes and ordering") {
    const Table t = run_csv(Mode::fig3b, "");
    std::vector<double> ns, ga, gb;
    for (std::size_t r = 0; r < t.rows.size(); r += 2) {
        ns.push_back(t.num(r, "N"));
        ga.push_back(t.num(r, "gain"));
        gb.push_back(t.num(r + 1, "gain"));
        CHECK(gb.back() > ga.back());
        CHECK_FALSE(t.str(r, "regime_note").empty());
    }
    CHECK(ns.front() == 100);
    CHECK(ns.back() == 1000000);
    CHECK(oracles::loglog_slope(ns, ga) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(oracles::loglog_slope(ns, gb) == doctest::Approx(2.0).epsilon(0.02));

    // Literal per-row binding alpha = 100 sqrt(N) also scales mu, so theta ~ sqrt(N).
    const Table p = run_csv(Mode::fig3b, "alpha_binding=per_n");
    std::vector<double> pa, pb;
    ns.clear();
    for (std::size_t r = 0; r < p.rows.size(); r += 2) {
        ns.push_back(p.num(r, "N"));
        pa.push_back(p.num(r, "gain"));
        pb.push_back(p.num(r + 1, "gain"));
    }
    CHECK(oracles::loglog_slope(ns, pa) == doctest::Approx(3.0).epsilon(0.02));
    CHECK(oracles::loglog_slope(ns, pb) == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("output is deterministic") {
    for (Mode m : {Mode::fig2, Mode::fig3a, Mode::fig3b}) {
        CHECK(run_text(m, "") == run_text(m, ""));
    }
    CHECK(run_text(Mode::verify, "N=1,2\nalpha=0.5\ntheta=0.3") ==
          run_text(Mode::verify, "N=1,2\nalpha=0.5\ntheta=0.3"));
}

TEST_CASE("json lines output") {
    const std::string text = run_text(Mode::case_a, "N=2\nalpha=1\ntheta=0.1,0.2", Format::jsonl);
    std::istringstream in(text);
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        const nlohmann::json row = nlohmann::json::parse(line);
        CHECK(row["case"] == "a");
        CHECK(row["N"] == 2);
        CHECK(row["mu"].is_null());
        CHECK(row["qfi"].get<double>() == analytic::qfi_case_a_max_phi(1.0, 2, count ? 0.2 : 0.1).qfi);
        ++count;
    }
    CHECK(count == 2);
}

TEST_CASE("verify mode") {
    Summary s;
    const Table t = run_csv(Mode::verify, "N=1:2\nalpha=0.5,1.5\ntheta=0,2", &s);
    CHECK(s.failures == 0);
    CHECK(exit_status(s, true) == 0);
    int variance = 0, fidelity = 0, bch = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string& suite = t.str(r, "suite");
        variance += suite == "variance";
        fidelity += suite == "fidelity";
        bch += suite == "bch";
        CHECK(t.str(r, "pass") == "true");
        CHECK(t.str(r, "provenance") == "oracle");
    }
    CHECK(variance == 2 * 2 * 2 * 3 * 2);
    CHECK(fidelity == variance);
    CHECK(bch == 6);

    SweepConfig tight = make_config(Mode::verify, KeyValues::parse("N=4\nalpha=1.5"));
    tight.max_oracle_dim = 50;
    std::ostringstream sink;
    CHECK_THROWS_AS(run_sweep(tight, sink), DimensionOverflow);
}

}  // TEST_SUITE
