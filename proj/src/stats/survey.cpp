#include "trickery/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace trickery {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::optional<bool> parse_bool(const std::string& s) {
    const auto l = lower(s);
    if (l == "true" || l == "1" || l == "yes" || l == "y") return true;
    if (l == "false" || l == "0" || l == "no" || l == "n") return false;
    return std::nullopt;
}

std::optional<long> parse_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (*end != '\0') return std::nullopt;
    return v;
}

}  // namespace

std::string_view stats_error_name(StatsErrorCode c) {
    switch (c) {
        case StatsErrorCode::AllDifferencesZero: return "AllDifferencesZero";
        case StatsErrorCode::EmptyInput: return "EmptyInput";
        case StatsErrorCode::BadInput: return "BadInput";
    }
    return "?";
}

std::vector<SurveyRecord> filter_valid(std::span<const SurveyRecord> records) {
    std::vector<SurveyRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                 [](const SurveyRecord& r) { return r.valid_example; });
    return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

Result<WilcoxonResult, StatsError> wilcoxon_one_sample(std::span<const double> values, double mu0) {
    if (values.empty()) return fail(StatsError{StatsErrorCode::EmptyInput, "no values"});
    std::vector<double> diffs;
    for (double v : values) {
        const double d = v - mu0;
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) {
        return fail(StatsError{StatsErrorCode::AllDifferencesZero, "every value equals the reference"});
    }
    std::vector<double> mags(diffs.size());
    std::transform(diffs.begin(), diffs.end(), mags.begin(), [](double d) { return std::fabs(d); });
    const auto ranks = average_ranks(mags);

    WilcoxonResult r;
    r.n_nonzero = static_cast<int>(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) (diffs[i] > 0 ? r.w_plus : r.w_minus) += ranks[i];

    const double m = r.n_nonzero;
    std::map<double, int> ties;
    for (double a : mags) ++ties[a];
    double tie_term = 0;
    for (const auto& [value, t] : ties) tie_term += (static_cast<double>(t) * t * t - t) / 48.0;
    const double variance = m * (m + 1) * (2 * m + 1) / 24.0 - tie_term;
    r.z = variance > 0 ? (r.w_plus - m * (m + 1) / 4.0) / std::sqrt(variance) : 0.0;
    r.p = std::erfc(std::fabs(r.z) / std::sqrt(2.0));
    return r;
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
    if (v.size() < 2) return 0;
    const double m = mean(v);
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double quantile_type6(std::vector<double> v, double p) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const double pos = (static_cast<double>(v.size()) + 1.0) * p;
    if (pos <= 1.0) return v.front();
    if (pos >= static_cast<double>(v.size())) return v.back();
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    return v[lo - 1] + frac * (v[lo] - v[lo - 1]);
}

double iqr_type6(std::span<const double> v) {
    std::vector<double> copy(v.begin(), v.end());
    return quantile_type6(copy, 0.75) - quantile_type6(copy, 0.25);
}

std::vector<PatternStats> pattern_table(std::span<const SurveyRecord> records) {
    const auto valid = filter_valid(records);
    std::vector<PatternStats> rows;
    for (Pattern p : kAllPatterns) {
        std::vector<double> ratings;
        bool present = false;
        for (const auto& r : records) present = present || r.pattern == p;
        for (const auto& r : valid) {
            if (r.pattern == p) ratings.push_back(r.rating);
        }
        if (!present) continue;
        PatternStats row;
        row.pattern = p;
        row.n = static_cast<int>(ratings.size());
        row.mean = mean(ratings);
        row.sd = sample_sd(ratings);
        row.median = median_of(ratings);
        row.iqr = iqr_type6(ratings);
        auto w = wilcoxon_one_sample(ratings, 3.0);
        if (w) {
            row.test = *w;
        } else {
            row.error = w.error();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Result<std::vector<SurveyRecord>, StatsError> parse_survey_csv(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line).front() == '#') continue;
        lines.push_back(split_csv(line));
    }
    if (lines.empty()) return fail(StatsError{StatsErrorCode::EmptyInput, "no rows"});

    std::vector<std::string> header;
    for (const auto& h : lines.front()) header.push_back(lower(h));
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        return std::nullopt;
    };
    auto bad = [](std::size_t row, const std::string& what) {
        return fail(StatsError{StatsErrorCode::BadInput, "row " + std::to_string(row + 1) + ": " + what});
    };

    std::vector<SurveyRecord> out;
    const auto c_pattern = column("pattern");
    if (!c_pattern) return fail(StatsError{StatsErrorCode::BadInput, "header needs a 'pattern' column"});

    if (column("rating_1")) {
        std::array<std::size_t, 5> cols{};
        for (int k = 1; k <= 5; ++k) {
            auto c = column("rating_" + std::to_string(k));
            if (!c) return fail(StatsError{StatsErrorCode::BadInput, "histogram header needs rating_1..rating_5"});
            cols[static_cast<std::size_t>(k - 1)] = *c;
        }
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto& row = lines[i];
            if (row.size() != header.size()) return bad(i, "expected " + std::to_string(header.size()) + " fields");
            auto p = parse_pattern(row[*c_pattern]);
            if (!p) return bad(i, "unknown pattern '" + row[*c_pattern] + "'");
            int serial = 0;
            for (int k = 1; k <= 5; ++k) {
                auto count = parse_int(row[cols[static_cast<std::size_t>(k - 1)]]);
                if (!count || *count < 0) return bad(i, "bad count for rating " + std::to_string(k));
                for (long c = 0; c < *count; ++c) {
                    out.push_back({std::string(pattern_key(*p)) + "#" + std::to_string(++serial), *p, k, true});
                }
            }
        }
        return out;
    }

    const auto c_part = column("participant");
    const auto c_rating = column("rating");
    const auto c_valid = column("valid_example");
    if (!c_part || !c_rating || !c_valid) {
        return fail(StatsError{StatsErrorCode::BadInput,
                               "header must be participant,pattern,rating,valid_example or pattern,rating_1..rating_5"});
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& row = lines[i];
        if (row.size() != header.size()) return bad(i, "expected " + std::to_string(header.size()) + " fields");
        auto p = parse_pattern(row[*c_pattern]);
        if (!p) return bad(i, "unknown pattern '" + row[*c_pattern] + "'");
        auto rating = parse_int(row[*c_rating]);
        if (!rating || *rating < 1 || *rating > 5) return bad(i, "rating must be an integer from 1 to 5");
        auto valid = parse_bool(row[*c_valid]);
        if (!valid) return bad(i, "valid_example must be true or false");
        out.push_back({row[*c_part], *p, static_cast<int>(*rating), *valid});
    }
    return out;
}

long round_half_away(double v) { return std::lround(v); }

std::string format_fixed(double v, int decimals) {
    // Round half away from zero on the decimal value, not on its binary image.
    const double scale = std::pow(10.0, decimals);
    const double r = std::round(v * scale + (v >= 0 ? 1e-9 : -1e-9)) / scale;
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << (r == 0 ? 0.0 : r);
    return os.str();
}

std::string format_p(double p) {
    if (p < 0.001) return "<0.001";
    return format_fixed(p, 3);
}

std::string table_text(std::span<const PatternStats> rows) {
    std::ostringstream os;
    auto cell = [&](const std::string& s, int width, bool left = false) {
        os << (left ? std::left : std::right) << std::setw(width) << s;
    };
    cell("Pattern", 28, true);
    cell("N", 4);
    cell("Mean", 7);
    cell("SD", 8);
    cell("Median", 8);
    cell("IQR", 5);
    cell("z", 9);
    cell("p", 9);
    os << '\n';
    for (const auto& r : rows) {
        cell(std::string(pattern_game_name(r.pattern)), 28, true);
        cell(std::to_string(r.n), 4);
        cell(format_fixed(r.mean, 2), 7);
        cell(format_fixed(r.sd, 3), 8);
        cell(format_fixed(r.median, 1), 8);
        cell(std::to_string(round_half_away(r.iqr)), 5);
        if (r.test) {
            cell(format_fixed(r.test->z, 3), 9);
            cell(format_p(r.test->p) + (r.significant() ? "*" : " "), 9);
        } else {
            cell("n/a", 9);
            cell(r.error ? std::string(stats_error_name(r.error->code)) : "n/a", 20);
        }
        os << '\n';
    }
    os << "* p < 0.05 (two-tailed, one-sample Wilcoxon signed-rank against 3)\n";
    return os.str();
}

std::string table_csv(std::span<const PatternStats> rows) {
    std::ostringstream os;
    os << "pattern,concept,n,mean,sd,median,iqr,z,p,p_value,significant\n";
    for (const auto& r : rows) {
        os << '"' << pattern_game_name(r.pattern) << "\"," << pattern_concept(r.pattern) << ',' << r.n << ','
           << format_fixed(r.mean, 2) << ',' << format_fixed(r.sd, 3) << ',' << format_fixed(r.median, 1) << ','
           << round_half_away(r.iqr) << ',';
        if (r.test) {
            char pbuf[32];
            std::snprintf(pbuf, sizeof pbuf, "%.6g", r.test->p);
            os << format_fixed(r.test->z, 3) << ',' << format_p(r.test->p) << ',' << pbuf << ','
               << (r.significant() ? "true" : "false");
        } else {
            os << ",,," << (r.error ? stats_error_name(r.error->code) : "");
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace trickery
