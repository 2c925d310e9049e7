#include <random>

#include "arglab/fixtures.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arglab;
using namespace testsupport;

TEST_CASE("reference framework shape") {
    auto af = reference_framework();
    CHECK(af.arguments().size() == 7);
    CHECK(af.attacks().size() == 7);
    CHECK(attackers(af, "aC") == std::set<ArgumentId>{"aD", "aA"});
    CHECK(af.has_attack("aD", "aE"));
    CHECK(af.has_attack("aD", "aC"));
}

TEST_CASE("reference database shape") {
    auto db = reference_database();
    CHECK(db.tables().size() == 5);
    CHECK(db.schema().header_of("tbl3") ==
          std::set<ArgumentId>{"aE", "aD", "aC", "aB", "aA"});
    CHECK(db.table("tbl1").row_count() == 4);
    CHECK(db.table("tbl2").row_count() == 3);
    CHECK(db.table("tbl3").row_count() == 1);
    CHECK(db.table("tbl4").row_count() == 3);
    CHECK(db.table("tbl5").row_count() == 1);
}

TEST_CASE("oracle spot checks on the reference framework") {
    auto af = reference_framework();
    CHECK(brute_force_semantics(af, SemanticsKind::Complete, Sense::Strong) ==
          reference_database().table("tbl2").body());
    CHECK(brute_force_semantics(af, SemanticsKind::Admissible, Sense::Weak).size() == 8);
    CHECK(brute_force_semantics(af, SemanticsKind::Stable, Sense::Strong) ==
          std::vector<Labelling>{complete_stable_row()});
}

TEST_CASE("oracle refuses oversized frameworks") {
    std::set<ArgumentId> args;
    for (int i = 0; i < 9; ++i) args.insert("a" + std::to_string(i));
    ArgumentationFramework af(args, {});
    CHECK_THROWS_AS(brute_force_semantics(af, SemanticsKind::Complete, Sense::Strong),
                    std::invalid_argument);
}

TEST_CASE("enumerators agree with the exhaustive oracle") {
    std::mt19937 rng(20240101);
    const std::vector<double> densities = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                           0.6, 0.7, 0.8, 0.9, 1.0};
    int trials = 0;
    while (trials < 200) {
        double density = densities[trials % densities.size()];
        auto af = random_framework(rng, 8, density);
        ++trials;
        for (auto sense : {Sense::Weak, Sense::Strong}) {
            CHECK(enumerate_complete(af, sense) ==
                  brute_force_semantics(af, SemanticsKind::Complete, sense));
            CHECK(enumerate_preferred(af, sense) ==
                  brute_force_semantics(af, SemanticsKind::Preferred, sense));
            CHECK(std::vector<Labelling>{compute_grounded(af, sense)} ==
                  brute_force_semantics(af, SemanticsKind::Grounded, sense));
            CHECK(enumerate_stable(af, sense) ==
                  brute_force_semantics(af, SemanticsKind::Stable, sense));
        }
        CHECK(enumerate_admissible(af) ==
              brute_force_semantics(af, SemanticsKind::Admissible, Sense::Weak));
    }
}
