#pragma once

// Survey analysis: valid-example filtering, descriptive statistics, and the
// one-sample Wilcoxon signed-rank test against the neutral rating.

#include "trickery/ids.hpp"
#include "trickery/result.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trickery {

struct SurveyRecord {
    std::string participant;
    Pattern pattern = Pattern::Preselection;
    int rating = 3;  // 1 helpful .. 5 hindering
    bool valid_example = true;

    bool operator==(const SurveyRecord&) const = default;
};

enum class StatsErrorCode : uint8_t { AllDifferencesZero, EmptyInput, BadInput };

struct StatsError {
    StatsErrorCode code;
    std::string message;
};

std::string_view stats_error_name(StatsErrorCode c);

std::vector<SurveyRecord> filter_valid(std::span<const SurveyRecord> records);

struct WilcoxonResult {
    int n_nonzero = 0;
    double w_plus = 0;
    double w_minus = 0;
    double z = 0;
    double p = 1;  // two-tailed
};

// Zeros dropped, average ranks for ties, tie-corrected variance, no
// continuity correction.
Result<WilcoxonResult, StatsError> wilcoxon_one_sample(std::span<const double> values, double mu0 = 3.0);

// Average ranks (1-based) of the values, ties sharing their mean rank.
std::vector<double> average_ranks(std::span<const double> values);

double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);
double median_of(std::vector<double> v);
// Weighted-average quantile at position (n + 1) p, clamped to the data.
double quantile_type6(std::vector<double> v, double p);
double iqr_type6(std::span<const double> v);

struct PatternStats {
    Pattern pattern = Pattern::Preselection;
    int n = 0;
    double mean = 0;
    double sd = 0;
    double median = 0;
    double iqr = 0;  // raw type-6 value; reported rounded to an integer
    std::optional<WilcoxonResult> test;
    std::optional<StatsError> error;

    bool significant() const { return test && test->p < 0.05; }
};

// One row per pattern present in the records, in table order. Records are
// filtered for valid examples first.
std::vector<PatternStats> pattern_table(std::span<const SurveyRecord> records);

// Accepts either per-response rows (participant,pattern,rating,valid_example)
// or histogram rows (pattern,rating_1,...,rating_5); the header decides.
Result<std::vector<SurveyRecord>, StatsError> parse_survey_csv(std::string_view text);

// "<0.001" below one in a thousand, otherwise three decimals.
std::string format_p(double p);
std::string format_fixed(double v, int decimals);
long round_half_away(double v);

std::string table_text(std::span<const PatternStats> rows);
std::string table_csv(std::span<const PatternStats> rows);

}  // namespace trickery
