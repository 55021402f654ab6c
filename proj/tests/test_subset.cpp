#include "doctest.h"

#include <cmath>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "xscore/io.hpp"
#include "xscore/subset.hpp"

using namespace xscore;
using namespace testsupport;

TEST_CASE("enumerate_k_subsets basics") {
    const auto pairs = enumerate_k_subsets({"c", "a", "b"}, 2);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::vector<std::string>{"a", "b"});
    CHECK(pairs[1] == std::vector<std::string>{"a", "c"});
    CHECK(pairs[2] == std::vector<std::string>{"b", "c"});

    CHECK(enumerate_k_subsets(table3().datasets(), 4).size() == 35);

    const auto full = enumerate_k_subsets({"x", "y"}, 2);
    REQUIRE(full.size() == 1);
    CHECK(full[0] == std::vector<std::string>{"x", "y"});
}

TEST_CASE("enumerate_k_subsets rejects bad sizes and huge enumerations") {
    for (std::size_t k : {std::size_t{0}, std::size_t{4}}) {
        try {
            (void)enumerate_k_subsets({"a", "b", "c"}, k);
            FAIL("expected bad_subset_size");
        } catch (const error& e) {
            CHECK(e.kind() == errc::bad_subset_size);
        }
    }
    std::vector<std::string> many;
    for (int i = 0; i < 40; ++i) many.push_back("d" + std::to_string(i));
    try {
        (void)enumerate_k_subsets(many, 20); // C(40,20) is ~1.4e11
        FAIL("expected bad_subset_size");
    } catch (const error& e) {
        CHECK(e.kind() == errc::bad_subset_size);
    }
}

TEST_CASE("rank_fidelity endpoints") {
    std::vector<ScoreRecord> full(11), same(11), reversed(11);
    for (std::size_t i = 0; i < 11; ++i) {
        const std::string name = "m" + std::to_string(i);
        full[i].model = name;
        full[i].xscore = static_cast<double>(i);
        same[i].model = name;
        same[i].xscore = static_cast<double>(i) * 2.0; // same ordering, different values
        reversed[i].model = name;
        reversed[i].xscore = -static_cast<double>(i);
    }
    CHECK(rank_fidelity(full, same, FidelityObjective::kendall_tau) == 1.0);
    CHECK(rank_fidelity(full, same, FidelityObjective::pairwise_agreement) == 1.0);
    CHECK(rank_fidelity(full, same, FidelityObjective::spearman_rho) == 1.0);
    CHECK(rank_fidelity(full, reversed, FidelityObjective::kendall_tau) == -1.0);
    CHECK(rank_fidelity(full, full, FidelityObjective::score_mae) == 0.0);
}

TEST_CASE("rank_fidelity rejects mismatched model sets") {
    std::vector<ScoreRecord> a(2), b(2);
    a[0].model = "x";
    a[1].model = "y";
    b[0].model = "x";
    b[1].model = "z";
    try {
        (void)rank_fidelity(a, b, FidelityObjective::kendall_tau);
        FAIL("expected model_set_mismatch");
    } catch (const error& e) {
        CHECK(e.kind() == errc::model_set_mismatch);
    }
}

TEST_CASE("select_proxy_subset over the fixture at k=4") {
    std::vector<SubsetReport> reports;
    for (const auto& winner : kSubsetWinners) {
        const auto objective = *objective_from_name(winner.objective);
        const SubsetReport report = select_proxy_subset(table3(), 4, Lambda(0.5), objective);
        CHECK(report.candidates.size() == 35);
        const std::vector<std::string> expected(winner.datasets.begin(), winner.datasets.end());
        CHECK(report.best().datasets == expected);
        CHECK(std::fabs(report.best().fidelity - winner.fidelity) <= 1e-9);
        reports.push_back(report);
    }

    // the spot-checked candidates carry the frozen fidelity values
    for (const auto& spot : kSpotCandidates) {
        const std::vector<std::string> names(spot.datasets.begin(), spot.datasets.end());
        const double frozen[] = {spot.kendall_tau, spot.spearman_rho, spot.pairwise_agreement,
                                 spot.score_mae};
        for (std::size_t o = 0; o < reports.size(); ++o) {
            const auto it = std::find_if(
                reports[o].candidates.begin(), reports[o].candidates.end(),
                [&](const SubsetCandidate& c) { return c.datasets == names; });
            REQUIRE(it != reports[o].candidates.end());
            CHECK(std::fabs(it->fidelity - frozen[o]) <= 1e-9);
        }
    }
}

TEST_CASE("the four-dataset reference ties the winner on rank objectives but "
          "loses the lexicographic tie-break") {
    const std::vector<std::string> reference = {"cifar-100", "ham10k", "imagenette-160",
                                                "stanford-dogs"};
    const SubsetReport report =
        select_proxy_subset(table3(), 4, Lambda(0.5), FidelityObjective::kendall_tau);
    const auto it = std::find_if(report.candidates.begin(), report.candidates.end(),
                                 [&](const SubsetCandidate& c) { return c.datasets == reference; });
    REQUIRE(it != report.candidates.end());
    CHECK(it->fidelity == report.best().fidelity);
    CHECK(report.best().datasets != reference);
    CHECK(report.best().datasets < reference);
}

TEST_CASE("k = N returns the full set with perfect fidelity") {
    const SubsetReport tau =
        select_proxy_subset(table3(), 7, Lambda(0.5), FidelityObjective::kendall_tau);
    REQUIRE(tau.candidates.size() == 1);
    CHECK(tau.best().fidelity == 1.0);
    const SubsetReport mae =
        select_proxy_subset(table3(), 7, Lambda(0.5), FidelityObjective::score_mae);
    CHECK(mae.best().fidelity == 0.0);
}

TEST_CASE("select_proxy_subset rejects k outside [2, N]") {
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{8}}) {
        try {
            (void)select_proxy_subset(table3(), k, Lambda(0.5), FidelityObjective::kendall_tau);
            FAIL("expected bad_subset_size");
        } catch (const error& e) {
            CHECK(e.kind() == errc::bad_subset_size);
        }
    }
}

TEST_CASE("restricted candidates obey the scoring invariants") {
    const SubsetReport report =
        select_proxy_subset(table3(), 3, Lambda(0.5), FidelityObjective::spearman_rho);
    for (const auto& candidate : report.candidates) {
        for (const auto& rec : candidate.records) {
            CHECK(rec.normalized_row.size() == 3);
            CHECK(rec.xscore <= rec.mean_score);
            CHECK(rec.variance >= 0.0);
            CHECK(rec.out_of_range.empty()); // self-derived anchors stay in [0,1]
        }
    }
}

TEST_CASE("subset reports are byte-deterministic across runs") {
    auto run = [] {
        std::vector<SubsetReport> reports;
        for (FidelityObjective objective : kAllObjectives) {
            reports.push_back(select_proxy_subset(table3(), 4, Lambda(0.5), objective));
        }
        return emit_subset_report(reports, "table3.csv",
                                  {"cifar-100", "ham10k", "imagenette-160", "stanford-dogs"});
    };
    CHECK(run() == run());
}
