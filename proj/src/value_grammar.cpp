#include "cavqfi/value_grammar.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "cavqfi/errors.hpp"
#include "cavqfi/linalg.hpp"

namespace cavqfi::grammar {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw ConfigError("cannot parse '" + std::string(text) + "': " + why);
}

double parse_number(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) {
        bad(text, "empty value");
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size()) {
        bad(text, "not a number");
    }
    return value;
}

int parse_count(std::string_view text) {
    const double n = parse_number(text);
    if (n < 1.0 || n != std::floor(n) || n > 1e7) {
        bad(text, "point count must be a positive integer");
    }
    return static_cast<int>(n);
}

std::vector<double> expand_range(std::string_view item) {
    const std::vector<std::string> parts = split(item, ':');
    const std::string& kind = parts[0];
    if (parts.size() != 4) {
        bad(item, "ranges take the form kind:a:b:n");
    }
    const double a = parse_scalar(parts[1]);
    const double b = parse_scalar(parts[2]);
    const int n = parse_count(parts[3]);
    if (!(a < b) && n > 1) {
        bad(item, "range needs a < b");
    }
    std::vector<double> out;
    out.reserve(n);
    if (kind == "lin") {
        for (int i = 0; i < n; ++i) {
            out.push_back(n == 1 ? a : (i == n - 1 ? b : a + (b - a) * i / (n - 1)));
        }
    } else if (kind == "grid") {
        for (int i = 0; i < n; ++i) {
            out.push_back(a + (b - a) * i / n);
        }
    } else if (kind == "log") {
        if (!(a > 0.0) || !(b > 0.0)) {
            bad(item, "log range needs positive ends");
        }
        const double la = std::log10(a);
        const double lb = std::log10(b);
        for (int i = 0; i < n; ++i) {
            if (n == 1 || i == 0) {
                out.push_back(a);
            } else if (i == n - 1) {
                out.push_back(b);
            } else {
                out.push_back(std::pow(10.0, la + (lb - la) * i / (n - 1)));
            }
        }
    } else {
        bad(item, "unknown range kind (lin, grid, log)");
    }
    return out;
}

void check_increasing(std::string_view text, const std::vector<double>& values) {
    if (values.empty()) {
        bad(text, "empty list");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            bad(text, "non-finite value");
        }
        if (i > 0 && !(values[i] > values[i - 1])) {
            bad(text, "values must be strictly increasing");
        }
    }
}

}  // namespace

std::string trim(std::string_view text) {
    const char* ws = " \t\r\n";
    const std::size_t first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    const std::size_t last = text.find_last_not_of(ws);
    return std::string(text.substr(first, last - first + 1));
}

double parse_scalar(std::string_view text) {
    const std::string s = trim(text);
    const std::size_t pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
        return parse_number(s);
    }
    // [k*]pi[/m]
    double factor = 1.0;
    if (pi_pos > 0) {
        if (s[pi_pos - 1] != '*') {
            bad(text, "expected k*pi");
        }
        factor = parse_number(std::string_view(s).substr(0, pi_pos - 1));
    }
    double divisor = 1.0;
    const std::string tail = s.substr(pi_pos + 2);
    if (!tail.empty()) {
        if (tail[0] != '/') {
            bad(text, "expected pi/m");
        }
        divisor = parse_number(std::string_view(tail).substr(1));
        if (divisor == 0.0) {
            bad(text, "division by zero");
        }
    }
    return factor * kPi / divisor;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        if (item.find(':') != std::string::npos) {
            const std::vector<double> range = expand_range(item);
            out.insert(out.end(), range.begin(), range.end());
        } else {
            out.push_back(parse_scalar(item));
        }
    }
    check_increasing(text, out);
    return out;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    auto push = [&](double v) {
        if (!(std::abs(v) < std::numeric_limits<int>::max())) {
            bad(text, "integer out of range");
        }
        const int k = static_cast<int>(std::lround(v));
        if (out.empty() || out.back() != k) {
            out.push_back(k);
        }
    };
    for (const std::string& item : split(text, ',')) {
        const std::vector<std::string> parts = split(item, ':');
        if (parts.size() == 2) {
            const double a = parse_number(parts[0]);
            const double b = parse_number(parts[1]);
            if (a != std::floor(a) || b != std::floor(b) || !(a <= b)) {
                bad(item, "integer range needs integers a <= b");
            }
            for (double k = a; k <= b; k += 1.0) {
                push(k);
            }
        } else if (parts.size() == 4) {
            for (double v : expand_range(item)) {
                push(v);
            }
        } else if (parts.size() == 1) {
            const double v = parse_number(item);
            if (v != std::floor(v)) {
                bad(item, "expected an integer");
            }
            out.push_back(static_cast<int>(v));
        } else {
            bad(item, "malformed integer range");
        }
    }
    std::vector<double> as_real(out.begin(), out.end());
    check_increasing(text, as_real);
    return out;
}

}  // namespace cavqfi::grammar
