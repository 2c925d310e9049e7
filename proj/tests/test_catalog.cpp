#include <random>

#include "arglab/catalog.hpp"
#include "arglab/eval.hpp"
#include "arglab/fixtures.hpp"
#include "doctest.h"
#include "query_gen.hpp"
#include "support.hpp"

using namespace arglab;
using namespace testsupport;

namespace {

const Database& refdb() {
    static Database db = reference_database();
    return db;
}

Database complete_db(const ArgumentationFramework& af, Sense sense) {
    return make_database(LabelAlphabet(),
                         {{"t_com", make_table(af.arguments(),
                                               enumerate_complete(af, sense))}});
}

// The uncorrected maximality query: a row is kept only when every other
// row's decided labels agree with it, which no row of a branching complete
// table satisfies.
QueryExpr printed_preferred_query(const std::string& table,
                                  const std::set<ArgumentId>& header) {
    std::vector<FormulaPtr> agree;
    for (const auto& a : header) agree.push_back(make_atom(VarArgEqVarArg{"v", a, "v1", a}));
    FormulaPtr member_copy = make_exists(
        "v1", header,
        make_and(make_atom(TableMembership{table, "v1"}), make_conjunction(agree)));

    std::vector<FormulaPtr> clauses;
    for (const auto& a : header) {
        FormulaPtr undecided = make_and(make_not(make_atom(VarArgEqLabel{"v2", a, kIn})),
                                        make_not(make_atom(VarArgEqLabel{"v2", a, kOut})));
        clauses.push_back(make_or(std::move(undecided),
                                  make_atom(VarArgEqVarArg{"v2", a, "v", a})));
    }
    FormulaPtr all_rows = make_forall(
        "v2", header,
        make_or(make_not(make_atom(TableMembership{table, "v2"})),
                make_conjunction(clauses)));
    return QueryExpr{"v", header, make_and(std::move(member_copy), std::move(all_rows))};
}

}  // namespace

TEST_CASE("stable query over the reference complete table") {
    auto q = build_stable_query("tbl2", full_header());
    CHECK(check_wellformed(q, refdb().schema()).range_restricted);
    CHECK(evaluate(q, refdb()).body() == std::vector<Labelling>{complete_stable_row()});
    CHECK(evaluate_guarded(q, refdb()) == evaluate(q, refdb()));
}

TEST_CASE("stable query on a table whose rows all carry und") {
    ArgumentationFramework af({"a"}, {{"a", "a"}});
    auto db = complete_db(af, Sense::Strong);
    auto q = build_stable_query("t_com", af.arguments());
    CHECK(evaluate(q, db).row_count() == 0);
}

TEST_CASE("preferred query keeps the two maximal rows") {
    auto q = build_preferred_query("tbl2", full_header());
    CHECK(check_wellformed(q, refdb().schema()).range_restricted);
    auto result = evaluate(q, refdb());
    CHECK(result.body() ==
          std::vector<Labelling>{complete_stable_row(), complete_mid_row()});
    CHECK(evaluate_guarded(q, refdb()) == result);
    CHECK(result.body() == enumerate_preferred(reference_framework(), Sense::Strong));
}

TEST_CASE("preferred query on a one-row table returns that row") {
    ArgumentationFramework af({"x", "y"}, {{"x", "y"}});
    auto db = complete_db(af, Sense::Strong);
    auto q = build_preferred_query("t_com", af.arguments());
    CHECK(evaluate(q, db).body() == enumerate_complete(af, Sense::Strong));
}

TEST_CASE("grounded query finds the commitment-least row") {
    auto q = build_grounded_query("tbl2", full_header());
    CHECK(check_wellformed(q, refdb().schema()).range_restricted);
    auto result = evaluate(q, refdb());
    CHECK(result.body() == std::vector<Labelling>{complete_grounded_row()});
    CHECK(evaluate_guarded(q, refdb()) == result);
}

TEST_CASE("classic queries match direct computation on random frameworks") {
    std::mt19937 rng(271);
    int done = 0;
    while (done < 60) {
        auto af = random_framework(rng, 7, 0.1 * (rng() % 11));
        if (af.arguments().empty()) continue;
        ++done;
        for (auto sense : {Sense::Strong, Sense::Weak}) {
            auto db = complete_db(af, sense);
            auto header = af.arguments();

            // the und/lc-free filter characterizes stable rows only among
            // fully decided labellings, so it is checked on the strong table
            if (sense == Sense::Strong) {
                auto stable = evaluate_guarded(build_stable_query("t_com", header), db);
                CHECK(stable.body() == enumerate_stable(af, sense));
            }

            Label undecided = sense == Sense::Strong ? kUnd : kLc;
            auto preferred =
                evaluate_guarded(build_preferred_query("t_com", header, undecided), db);
            CHECK(preferred.body() == enumerate_preferred(af, sense));

            auto grounded = evaluate_guarded(build_grounded_query("t_com", header), db);
            CHECK(grounded.body() == std::vector<Labelling>{compute_grounded(af, sense)});
        }
    }
}

TEST_CASE("partial query is projection") {
    auto q = build_partial_query("tbl2", {"aG", "aF", "aE"});
    CHECK(evaluate(q, refdb()) == refdb().table("tbl4"));
    CHECK(evaluate_guarded(q, refdb()) == refdb().table("tbl4"));

    auto full = build_partial_query("tbl2", full_header());
    CHECK(evaluate(full, refdb()) == refdb().table("tbl2"));

    // restricted to the closure of aB all four admissible rows stay distinct
    auto adm_sub = build_partial_query("tbl1", {"aE", "aD", "aC", "aB", "aA"});
    CHECK(evaluate(adm_sub, refdb()).row_count() == 4);
    // dropping aE as well merges the two rows that differ only there
    auto adm_small = build_partial_query("tbl1", {"aD", "aC", "aB", "aA"});
    CHECK(evaluate(adm_small, refdb()).row_count() == 3);
}

TEST_CASE("dependent query selects by a labelling fragment") {
    // the two-step derivation: project the admissible table to the closure
    // of aB, then keep rows accepting aB
    auto closure = std::set<ArgumentId>{"aE", "aD", "aC", "aB", "aA"};
    auto projected = project(refdb().table("tbl1"), closure);
    auto db = make_database(LabelAlphabet(), {{"t_closure", projected}});
    auto q = build_dependent_query("t_closure", closure, {{"aB", kIn}});
    CHECK(evaluate(q, db).body() == std::vector<Labelling>{explain_b_row()});
    CHECK(evaluate_guarded(q, db) == evaluate(q, db));

    auto whole = build_dependent_query("tbl2", full_header(), {});
    CHECK(evaluate(whole, refdb()) == refdb().table("tbl2"));

    auto none = build_dependent_query("tbl2", full_header(), {{"aG", kIn}});
    CHECK(evaluate(none, refdb()).row_count() == 0);

    CHECK_THROWS_AS(build_dependent_query("tbl4", {"aG", "aF", "aE"}, {{"aA", kIn}}),
                    std::invalid_argument);
}

TEST_CASE("dependent query with a fragment table") {
    auto db0 = refdb();
    std::map<std::string, ArgLabellingTable> tables = db0.tables();
    tables.emplace("frag", make_table({"aE", "aD"}, {lab({{"aE", kIn}, {"aD", kOut}}),
                                                     lab({{"aE", kOut}, {"aD", kIn}})}));
    auto db = make_database(LabelAlphabet(), std::move(tables));
    auto q = build_dependent_query_from_table("tbl2", full_header(), "frag", {"aE", "aD"});
    auto result = evaluate(q, db);
    CHECK(result.body() ==
          std::vector<Labelling>{complete_stable_row(), complete_mid_row()});
    CHECK(evaluate_guarded(q, db) == result);
}

TEST_CASE("partial and dependent queries match the table oracles") {
    std::mt19937 rng(90210);
    for (int trial = 0; trial < 60; ++trial) {
        auto db = random_database(rng, 5);
        const auto& table = db.table("t_com");
        auto header = table.header_set();

        std::set<ArgumentId> subset;
        for (const auto& a : header) {
            if (rng() % 2) subset.insert(a);
        }
        auto partial = evaluate_guarded(build_partial_query("t_com", subset), db);
        CHECK(partial == project(table, subset));

        std::vector<std::pair<ArgumentId, Label>> constraints;
        for (const auto& a : header) {
            if (rng() % 3 == 0)
                constraints.push_back(
                    {a, db.schema().labels().labels()[rng() % 4]});
        }
        auto dependent =
            evaluate_guarded(build_dependent_query("t_com", header, constraints), db);
        auto expected = select_rows(table, [&](const Labelling& row) {
            for (const auto& [a, l] : constraints) {
                if (row.at(a) != l) return false;
            }
            return true;
        });
        CHECK(dependent == expected);
    }
}

TEST_CASE("join query reproduces the multi-agent result") {
    auto q = build_join_query({{"tbl4", {"aG", "aF", "aE"}}, {"tbl5", {"aD", "aC", "aB", "aA"}}},
                              "tbl2", full_header());
    CHECK(check_wellformed(q, refdb().schema()).range_restricted);
    auto result = evaluate(q, refdb());
    CHECK(result.body() == std::vector<Labelling>{complete_stable_row()});
    CHECK(evaluate_guarded(q, refdb()) == result);

    auto self = build_join_query({{"tbl2", full_header()}}, "tbl2", full_header());
    CHECK(evaluate(self, refdb()) == refdb().table("tbl2"));

    CHECK_THROWS_AS(build_join_query({{"tbl4", {"aG", "aF"}}}, "tbl2", full_header()),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_join_query({{"tbl4", {"aG", "aF", "aE"}},
                                      {"tbl5", {"aE", "aD", "aC", "aB", "aA"}}},
                                     "tbl2", full_header()),
                    std::invalid_argument);
}

TEST_CASE("join query equals multi_agent_semantics on random partitions") {
    std::mt19937 rng(333);
    int done = 0;
    while (done < 40) {
        auto af = random_framework(rng, 6, 0.1 * (rng() % 11));
        if (af.arguments().size() < 2) continue;
        ++done;

        auto global = enumerate_complete(af, Sense::Strong);
        std::vector<std::set<ArgumentId>> blocks(2);
        {
            // ensure both blocks are non-empty
            std::vector<ArgumentId> pool(af.arguments().begin(), af.arguments().end());
            blocks[0].insert(pool[0]);
            blocks[1].insert(pool[1]);
            for (std::size_t i = 2; i < pool.size(); ++i) blocks[rng() % 2].insert(pool[i]);
        }

        std::vector<std::pair<std::set<ArgumentId>, std::vector<Labelling>>> locals;
        std::map<std::string, ArgLabellingTable> tables;
        tables.emplace("t_global", make_table(af.arguments(), global));
        std::vector<std::pair<std::string, std::set<ArgumentId>>> parts;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            auto known = blocks[i];
            // agents know their own block plus a random slice of the rest
            for (const auto& a : af.arguments()) {
                if (rng() % 2) known.insert(a);
            }
            auto local = local_semantics(af, known, blocks[i], SemanticsKind::Complete,
                                         Sense::Strong);
            locals.push_back({blocks[i], local});
            std::string name = "t_local" + std::to_string(i);
            tables.emplace(name, make_table(blocks[i], local));
            parts.push_back({name, blocks[i]});
        }
        auto db = make_database(LabelAlphabet(), std::move(tables));
        auto q = build_join_query(parts, "t_global", af.arguments());
        auto via_query = evaluate_guarded(q, db);
        auto direct = multi_agent_semantics(global, locals);
        CHECK(via_query.body() == direct);
    }
}

TEST_CASE("every built query is range-restricted and printable") {
    std::vector<QueryExpr> queries = {
        build_stable_query("tbl2", full_header()),
        build_preferred_query("tbl2", full_header()),
        build_grounded_query("tbl2", full_header()),
        build_partial_query("tbl2", {"aG", "aF", "aE"}),
        build_dependent_query("tbl2", full_header(), {{"aG", kOut}}),
        build_dependent_query_from_table("tbl2", full_header(), "tbl3",
                                         {"aE", "aD", "aC", "aB", "aA"}),
        build_join_query({{"tbl4", {"aG", "aF", "aE"}}, {"tbl5", {"aD", "aC", "aB", "aA"}}},
                         "tbl2", full_header()),
    };
    for (const auto& q : queries) {
        auto report = check_wellformed(q, refdb().schema());
        CHECK(report.ok);
        CHECK(report.range_restricted);
        auto reparsed = parse_query(pretty_print(q), refdb().schema());
        CHECK(pretty_print(reparsed) == pretty_print(q));
    }
}

TEST_CASE("the uncorrected meet query is not range-restricted") {
    // for every argument: either v.a is undecided, or every row agrees with
    // it; and either v.a is decided, or some row is undecided or two rows
    // disagree there -- the binder itself never gains a membership guard
    const auto header = full_header();
    std::vector<FormulaPtr> clauses;
    for (const auto& a : header) {
        FormulaPtr undecided = make_and(make_not(make_atom(VarArgEqLabel{"v", a, kIn})),
                                        make_not(make_atom(VarArgEqLabel{"v", a, kOut})));
        FormulaPtr all_agree = make_forall(
            "v1", header,
            make_or(make_not(make_atom(TableMembership{"tbl2", "v1"})),
                    make_atom(VarArgEqVarArg{"v", a, "v1", a})));
        FormulaPtr decided = make_and(make_not(make_atom(VarArgEqLabel{"v", a, kUnd})),
                                      make_not(make_atom(VarArgEqLabel{"v", a, kLc})));
        FormulaPtr witness = make_exists(
            "v1", header,
            make_and(make_atom(TableMembership{"tbl2", "v1"}),
                     make_disjunction(
                         {make_atom(VarArgEqLabel{"v1", a, kUnd}),
                          make_atom(VarArgEqLabel{"v1", a, kLc}),
                          make_exists(
                              "v2", header,
                              make_and(make_atom(TableMembership{"tbl2", "v2"}),
                                       make_not(make_atom(
                                           VarArgEqVarArg{"v1", a, "v2", a}))))})));
        clauses.push_back(make_and(make_or(undecided, all_agree),
                                   make_or(decided, witness)));
    }
    QueryExpr q{"v", header, make_conjunction(clauses)};
    auto report = check_wellformed(q, refdb().schema());
    CHECK(report.ok);
    CHECK_FALSE(report.range_restricted);
    CHECK(report.unguarded == std::vector<std::string>{"v"});
}

TEST_CASE("the uncorrected maximality query returns the empty table") {
    auto q = printed_preferred_query("tbl2", full_header());
    auto report = check_wellformed(q, refdb().schema());
    CHECK(report.ok);
    // its binder draws values only through equalities, so it is unguarded
    CHECK_FALSE(report.range_restricted);
    CHECK(report.unguarded == std::vector<std::string>{"v"});

    auto result = evaluate(q, refdb());
    CHECK(result.row_count() == 0);
    CHECK(result.header() == refdb().table("tbl2").header());
}
