#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "support/fixtures.hpp"
#include "xscore/matrix.hpp"
#include "xscore/scoring.hpp"

using namespace xscore;
using testsupport::table3;

namespace {

std::vector<CellRecord> small_records() {
    return {
        {"m1", "d1", 10.0}, {"m1", "d2", 20.0},
        {"m2", "d1", 30.0}, {"m2", "d2", 40.0},
    };
}

} // namespace

TEST_CASE("build_matrix assembles the fixture in file order") {
    const AccuracyMatrix& m = table3();
    CHECK(m.model_count() == 11);
    CHECK(m.dataset_count() == 7);
    CHECK(m.models().front() == "ConvMixer");
    CHECK(m.datasets().front() == "cifar-10");
    CHECK(m.at(0, 0) == 94.52);
    CHECK(m.at(10, 6) == 32.76);
    CHECK(m.at(1, 4) == 63.78); // EfficientNet on stanford-dogs
}

TEST_CASE("build_matrix rejects fewer than two models") {
    const std::vector<CellRecord> records = {{"m1", "d1", 50.0}};
    try {
        build_matrix(records);
        FAIL("expected too_few_models");
    } catch (const error& e) {
        CHECK(e.kind() == errc::too_few_models);
    }
}

TEST_CASE("build_matrix rejects duplicate cells") {
    auto records = small_records();
    records.push_back({"m1", "d1", 11.0});
    try {
        build_matrix(records);
        FAIL("expected duplicate_cell");
    } catch (const error& e) {
        CHECK(e.kind() == errc::duplicate_cell);
    }
}

TEST_CASE("build_matrix rejects sparse input") {
    auto records = small_records();
    records.pop_back();
    try {
        build_matrix(records);
        FAIL("expected missing_cell");
    } catch (const error& e) {
        CHECK(e.kind() == errc::missing_cell);
    }
}

TEST_CASE("build_matrix rejects accuracies outside [0, 100]") {
    for (double bad : {-0.5, 100.5, 150.0}) {
        auto records = small_records();
        records[0].accuracy = bad;
        try {
            build_matrix(records);
            FAIL("expected out_of_range");
        } catch (const error& e) {
            CHECK(e.kind() == errc::out_of_range);
        }
    }
    // boundary values are fine
    auto records = small_records();
    records[0].accuracy = 0.0;
    records[1].accuracy = 100.0;
    CHECK_NOTHROW(build_matrix(records));
}

TEST_CASE("build_matrix validates identifiers") {
    for (const std::string bad : {"", " m", "m ", "\tm"}) {
        std::vector<CellRecord> records = small_records();
        records[0].model = bad;
        records[1].model = bad;
        try {
            build_matrix(records);
            FAIL("expected bad_identifier");
        } catch (const error& e) {
            CHECK(e.kind() == errc::bad_identifier);
        }
    }
}

TEST_CASE("build_matrix content is order-insensitive") {
    std::vector<CellRecord> records;
    const AccuracyMatrix& m = table3();
    for (std::size_t r = 0; r < m.model_count(); ++r) {
        for (std::size_t c = 0; c < m.dataset_count(); ++c) {
            records.push_back({m.models()[r], m.datasets()[c], m.at(r, c)});
        }
    }
    std::mt19937 rng(7);
    std::shuffle(records.begin(), records.end(), rng);
    const AccuracyMatrix shuffled = build_matrix(records);
    for (std::size_t r = 0; r < m.model_count(); ++r) {
        for (std::size_t c = 0; c < m.dataset_count(); ++c) {
            const auto ri = shuffled.model_index(m.models()[r]);
            const auto ci = shuffled.dataset_index(m.datasets()[c]);
            REQUIRE(ri);
            REQUIRE(ci);
            CHECK(shuffled.at(*ri, *ci) == m.at(r, c));
        }
    }

    // downstream scores agree after identifier alignment
    const auto score_by_model = [](const AccuracyMatrix& matrix) {
        std::map<std::string, ScoreRecord> by_model;
        for (auto& rec : aggregate(normalize(matrix, column_extrema(matrix)), Lambda(0.5))) {
            by_model.emplace(rec.model, std::move(rec));
        }
        return by_model;
    };
    const auto base_scores = score_by_model(m);
    const auto shuffled_scores = score_by_model(shuffled);
    for (const auto& [model, rec] : base_scores) {
        const auto& other = shuffled_scores.at(model);
        CHECK(std::fabs(rec.xscore - other.xscore) <= 1e-12);
        CHECK(rec.rank == other.rank);
    }
}

TEST_CASE("column_extrema matches the fixture's known bounds") {
    const AnchorTable anchors = column_extrema(table3());
    CHECK(anchors.source == "table3.csv");
    const AnchorEntry* cifar10 = anchors.find("cifar-10");
    REQUIRE(cifar10);
    CHECK(cifar10->min == 91.97);
    CHECK(cifar10->max == 95.19);
    const AnchorEntry* dogs = anchors.find("stanford-dogs");
    REQUIRE(dogs);
    CHECK(dogs->min == 29.59);
    CHECK(dogs->max == 63.78);

    // extrema bracket every cell
    const AccuracyMatrix& m = table3();
    for (std::size_t c = 0; c < m.dataset_count(); ++c) {
        const AnchorEntry* e = anchors.find(m.datasets()[c]);
        REQUIRE(e);
        for (std::size_t r = 0; r < m.model_count(); ++r) {
            CHECK(e->min <= m.at(r, c));
            CHECK(m.at(r, c) <= e->max);
        }
    }
}

TEST_CASE("column_extrema rejects a zero-span column") {
    const std::vector<CellRecord> records = {{"m1", "d1", 80.0}, {"m2", "d1", 80.0}};
    try {
        column_extrema(build_matrix(records));
        FAIL("expected degenerate_column");
    } catch (const error& e) {
        CHECK(e.kind() == errc::degenerate_column);
    }
}

TEST_CASE("restricted_to keeps the requested columns in order") {
    const AccuracyMatrix sub =
        table3().restricted_to(std::vector<std::string>{"stanford-dogs", "cifar-10"});
    CHECK(sub.datasets() == std::vector<std::string>{"stanford-dogs", "cifar-10"});
    CHECK(sub.at(0, 0) == 54.81);
    CHECK(sub.at(0, 1) == 94.52);
    CHECK_THROWS_AS((void)table3().restricted_to(std::vector<std::string>{"nope"}), error);
}

TEST_CASE("comparability warnings over the fixture parameter counts") {
    const AccuracyMatrix m = table3().with_params(testsupport::table1_params());

    SUBCASE("threshold 1.5 flags the capacity outlier") {
        const auto warnings = validate_comparability(m, 1.5);
        CHECK(warnings.size() == 5); // FBNet against every much-smaller model
        const auto hit = std::find_if(warnings.begin(), warnings.end(), [](const auto& w) {
            return (w.model_a == "FBNet" && w.model_b == "ShuffleNet") ||
                   (w.model_a == "ShuffleNet" && w.model_b == "FBNet");
        });
        REQUIRE(hit != warnings.end());
        CHECK(hit->ratio == doctest::Approx(3.66 / 2.22).epsilon(1e-12));
        for (const auto& w : warnings) {
            CHECK((w.model_a == "FBNet" || w.model_b == "FBNet"));
            CHECK(w.ratio > 1.5);
        }
    }

    SUBCASE("threshold 2.0 finds nothing (max ratio about 1.65)") {
        CHECK(validate_comparability(m, 2.0).empty());
    }

    SUBCASE("identical parameter counts warn never") {
        std::map<std::string, double> equal;
        for (const auto& model : table3().models()) equal[model] = 2.5;
        CHECK(validate_comparability(table3().with_params(equal), 1.5).empty());
    }

    SUBCASE("metadata for under two models yields an empty list") {
        CHECK(validate_comparability(table3(), 1.5).empty());
        CHECK(validate_comparability(table3().with_params({{"FBNet", 3.66}}), 1.5).empty());
    }

    SUBCASE("threshold must exceed one") {
        CHECK_THROWS_AS((void)validate_comparability(m, 1.0), error);
    }
}

TEST_CASE("with_params rejects unknown models and non-positive counts") {
    try {
        (void)table3().with_params({{"NotAModel", 2.0}});
        FAIL("expected model_set_mismatch");
    } catch (const error& e) {
        CHECK(e.kind() == errc::model_set_mismatch);
    }
    CHECK_THROWS_AS((void)table3().with_params({{"FBNet", 0.0}}), error);
}
