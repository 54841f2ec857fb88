#include "support/helpers.hpp"

#include "trickery/stats.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace trickery;
using namespace trickery::testing;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(TRICKERY_FIXTURES_DIR) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<double> reflected(std::vector<double> v) {
    for (double& x : v) x = 6 - x;
    return v;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("average ranks share ties") {
    CHECK(average_ranks(std::vector<double>{2, 1, 1}) == std::vector<double>{3, 1.5, 1.5});
    CHECK(average_ranks(std::vector<double>{5, 5, 5, 5}) == std::vector<double>{2.5, 2.5, 2.5, 2.5});
    CHECK(average_ranks(std::vector<double>{}).empty());
}

TEST_CASE("signed-rank worked example [1, 2, 4] against 3") {
    auto r = wilcoxon_one_sample(std::vector<double>{1, 2, 4});
    REQUIRE(r.ok());
    CHECK(r->n_nonzero == 3);
    CHECK(r->w_plus == doctest::Approx(1.5));
    CHECK(r->w_minus == doctest::Approx(4.5));
    // var = 3*4*7/24 - (2^3 - 2)/48 = 3.375
    CHECK(r->z == doctest::Approx((1.5 - 3.0) / std::sqrt(3.375)));
    CHECK(r->z == doctest::Approx(-0.8165).epsilon(1e-3));
    CHECK(r->p == doctest::Approx(2 * 0.5 * std::erfc(0.8164965809 / std::sqrt(2.0))));
}

TEST_CASE("zeros are dropped and an all-zero sample is an error") {
    auto with_zeros = wilcoxon_one_sample(std::vector<double>{1, 3, 3, 2, 4});
    auto without = wilcoxon_one_sample(std::vector<double>{1, 2, 4});
    REQUIRE(with_zeros.ok());
    CHECK(with_zeros->z == doctest::Approx(without->z));
    CHECK(with_zeros->n_nonzero == 3);

    auto zero = wilcoxon_one_sample(std::vector<double>{3, 3, 3});
    REQUIRE_FALSE(zero.ok());
    CHECK(zero.error().code == StatsErrorCode::AllDifferencesZero);
    auto empty = wilcoxon_one_sample(std::vector<double>{});
    REQUIRE_FALSE(empty.ok());
    CHECK(empty.error().code == StatsErrorCode::EmptyInput);
}

TEST_CASE("rank sums add up and reflection flips the sign only") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        const auto v = random_ratings(rng, 30);
        auto r = wilcoxon_one_sample(v);
        REQUIRE(r.ok());
        const double m = r->n_nonzero;
        CHECK(r->w_plus + r->w_minus == m * (m + 1) / 2);
        CHECK((r->p >= 0 && r->p <= 1));
        auto f = wilcoxon_one_sample(reflected(v));
        REQUIRE(f.ok());
        CHECK(f->z == doctest::Approx(-r->z));
        CHECK(f->p == doctest::Approx(r->p));
        CHECK(f->w_plus == doctest::Approx(r->w_minus));
    }
}

TEST_CASE("normal approximation tracks the exact distribution for untied samples of 16") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(-1, 1);
    double worst = 0;
    for (int i = 0; i < 30; ++i) {
        std::vector<double> v;
        const double shift = unit(rng);
        for (int k = 0; k < 16; ++k) v.push_back(unit(rng) + shift);
        auto r = wilcoxon_one_sample(v, 0.0);
        REQUIRE(r.ok());
        worst = std::max(worst, std::fabs(r->p - exact_signed_rank_p(v, 0.0)));
    }
    CHECK(worst < 0.03);
}

TEST_CASE("the exact oracle agrees with hand-computed cases") {
    // Three positive differences with distinct ranks: only all-plus and
    // all-minus are as extreme, so p = 2/8.
    CHECK(exact_signed_rank_p({4, 5, 4.5}) == doctest::Approx(0.25));
    CHECK(exact_signed_rank_p({1}) == doctest::Approx(1.0));
    CHECK(exact_signed_rank_p({1, 5}) == doctest::Approx(1.0));
}

TEST_CASE("descriptives") {
    const std::vector<double> v = {1, 2, 2, 3, 5};
    CHECK(mean(v) == doctest::Approx(2.6));
    CHECK(sample_sd(v) == doctest::Approx(std::sqrt(2.3)));
    CHECK(median_of(v) == 2);
    CHECK(median_of({1, 2, 3, 4}) == 2.5);
    CHECK(quantile_type6({1, 2, 3, 4}, 0.25) == doctest::Approx(1.25));
    CHECK(quantile_type6({1, 2, 3, 4}, 0.75) == doctest::Approx(3.75));
    CHECK(quantile_type6({7}, 0.25) == 7);
    CHECK(iqr_type6(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(2.5));
}

TEST_CASE("formatting") {
    CHECK(format_p(0.0004) == "<0.001");
    CHECK(format_p(0.0094) == "0.009");
    CHECK(format_p(0.05) == "0.050");
    CHECK(format_fixed(2.175, 2) == "2.18");
    CHECK(format_fixed(-2.5955, 3) == "-2.596");
    CHECK(format_fixed(-0.0001, 2) == "0.00");
    CHECK(round_half_away(1.5) == 2);
    CHECK(round_half_away(-1.5) == -2);
}

TEST_CASE("per-response CSV: invalid examples are dropped before testing") {
    const std::string csv =
        "participant,pattern,rating,valid_example\n"
        "p1,Sneaky Shop,1,true\n"
        "p2,Sneaky Shop,2,true\n"
        "p3,Sneaky Shop,5,false\n"
        "p4,sneaking,4,yes\n"
        "p1,Looping Gameplay,3,true\n";
    auto records = parse_survey_csv(csv);
    REQUIRE(records.ok());
    CHECK(records->size() == 5);
    CHECK(filter_valid(*records).size() == 4);
    const auto table = pattern_table(*records);
    REQUIRE(table.size() == 2);
    CHECK(table[0].pattern == Pattern::Sneaking);
    CHECK(table[0].n == 3);
    REQUIRE(table[0].test);
    CHECK(table[0].test->w_plus == doctest::Approx(1.5));
    CHECK(table[1].pattern == Pattern::ForcedAction);
    CHECK_FALSE(table[1].test);
    REQUIRE(table[1].error);
    CHECK(table[1].error->code == StatsErrorCode::AllDifferencesZero);
    CHECK(table_text(table).find("AllDifferencesZero") != std::string::npos);
}

TEST_CASE("malformed survey CSVs are refused") {
    CHECK(parse_survey_csv("").error().code == StatsErrorCode::EmptyInput);
    CHECK(parse_survey_csv("who,what\nx,y\n").error().code == StatsErrorCode::BadInput);
    CHECK(parse_survey_csv("participant,pattern,rating,valid_example\np,Sneaky Shop,7,true\n").error().code ==
          StatsErrorCode::BadInput);
    CHECK(parse_survey_csv("participant,pattern,rating,valid_example\np,Dragons,2,true\n").error().code ==
          StatsErrorCode::BadInput);
    CHECK(parse_survey_csv("participant,pattern,rating,valid_example\np,Sneaky Shop,2,maybe\n").error().code ==
          StatsErrorCode::BadInput);
    CHECK(parse_survey_csv("pattern,rating_1,rating_2\nSneaky Shop,1,2\n").error().code == StatsErrorCode::BadInput);
}

TEST_CASE("helpfulness table from the rating histograms") {
    auto records = parse_survey_csv(fixture("helpfulness_histograms.csv"));
    REQUIRE(records.ok());
    const auto table = pattern_table(*records);
    REQUIRE(table.size() == 7);
    struct Row {
        Pattern p;
        int n;
        double mean, sd, median;
        long iqr;
        double z;
        bool sig;
    };
    const std::vector<Row> want = {
        {Pattern::Preselection, 22, 2.18, 1.296, 2.0, 2, -2.596, true},
        {Pattern::Sneaking, 18, 2.50, 1.339, 2.5, 3, -1.647, false},
        {Pattern::HiddenInformation, 19, 2.32, 1.336, 2.0, 2, -1.919, false},
        {Pattern::AestheticManipulation, 15, 1.47, 0.915, 1.0, 1, -3.361, true},
        {Pattern::Obstruction, 16, 1.75, 1.000, 2.0, 1, -2.954, true},
        {Pattern::Nagging, 18, 2.17, 1.249, 2.0, 2, -2.368, true},
        {Pattern::ForcedAction, 21, 1.90, 1.136, 2.0, 2, -3.086, true},
    };
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto& r = table[i];
        CAPTURE(pattern_game_name(r.pattern));
        CHECK(r.pattern == want[i].p);
        CHECK(r.n == want[i].n);
        CHECK(format_fixed(r.mean, 2) == format_fixed(want[i].mean, 2));
        CHECK(r.sd == doctest::Approx(want[i].sd).epsilon(0.0005));
        CHECK(r.median == want[i].median);
        CHECK(round_half_away(r.iqr) == want[i].iqr);
        REQUIRE(r.test);
        CHECK(std::fabs(r.test->z - want[i].z) <= 0.0005);
        CHECK(r.significant() == want[i].sig);
    }
    const std::string csv = table_csv(table);
    CHECK(csv.rfind("pattern,concept,n,mean,sd,median,iqr,z,p,p_value,significant\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
    CHECK(csv.find("\"Winding Hallway & Shortcut\",Aesthetic Manipulation,15,1.47") != std::string::npos);
    const std::string text = table_text(table);
    CHECK(text.find("<0.001*") != std::string::npos);
}

}  // TEST_SUITE
