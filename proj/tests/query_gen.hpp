#pragma once

#include <random>
#include <string>
#include <vector>

#include <map>

#include "arglab/catalog.hpp"
#include "arglab/eval.hpp"
#include "arglab/fixtures.hpp"
#include "arglab/semantics.hpp"
#include "support.hpp"

namespace testsupport {

using namespace arglab;

// A random database: semantics tables of a random framework plus random
// projections, so guard tables with several headers exist.
inline Database random_database(std::mt19937& rng, int max_args) {
    ArgumentationFramework af;
    do {
        af = random_framework(rng, max_args, 0.1 * (rng() % 11));
    } while (af.arguments().empty());
    LabelAlphabet alphabet;
    std::map<std::string, ArgLabellingTable> tables;
    tables.emplace("t_com",
                   make_table(af.arguments(), enumerate_complete(af, Sense::Strong)));
    tables.emplace("t_adm", make_table(af.arguments(), enumerate_admissible(af)));
    int extras = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < extras; ++i) {
        std::set<ArgumentId> cols;
        for (const auto& a : af.arguments()) {
            if (rng() % 2) cols.insert(a);
        }
        const auto& base = rng() % 2 ? tables.at("t_com") : tables.at("t_adm");
        tables.emplace("t_proj" + std::to_string(i), project(base, cols));
    }
    return make_database(alphabet, std::move(tables));
}

// Formulas over the variables in scope, built so that every quantified
// variable is guarded; used to drive the naive/guarded differential tests.
class RandomQueryGen {
public:
    RandomQueryGen(std::mt19937& rng, const Database& db) : rng_(rng), db_(db) {
        for (const auto& [name, table] : db.tables()) tables_.push_back(name);
    }

    QueryExpr query() {
        fresh_ = 0;
        scope_.clear();
        auto [table, argset] = pick_guard(3);
        scope_.push_back({"v", argset});
        FormulaPtr f = make_and(make_atom(TableMembership{table, "v"}), random_formula(2));
        scope_.pop_back();
        return QueryExpr{"v", argset, f};
    }

private:
    struct Var {
        std::string name;
        std::set<ArgumentId> argset;
    };

    std::pair<std::string, std::set<ArgumentId>> pick_guard(std::size_t max_args) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            const std::string& table = tables_[rng_() % tables_.size()];
            const auto& header = db_.schema().header_of(table);
            if (header.empty()) continue;
            std::vector<ArgumentId> pool(header.begin(), header.end());
            std::set<ArgumentId> argset;
            std::size_t want = 1 + rng_() % std::min(max_args, pool.size());
            while (argset.size() < want) argset.insert(pool[rng_() % pool.size()]);
            return {table, argset};
        }
        // fall back to the complete table
        const auto& header = db_.schema().header_of("t_com");
        return {"t_com", {*header.begin()}};
    }

    // Pick a name at random but use its innermost binding, so shadowed
    // entries never leak their outer argument sets.
    const Var& any_var() {
        const std::string& name = scope_[rng_() % scope_.size()].name;
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
            if (it->name == name) return *it;
        }
        return scope_.back();
    }

    ArgumentId arg_of(const Var& v) {
        std::vector<ArgumentId> pool(v.argset.begin(), v.argset.end());
        return pool[rng_() % pool.size()];
    }

    Label any_label() {
        const auto& labels = db_.schema().labels().labels();
        return labels[rng_() % labels.size()];
    }

    FormulaPtr random_atom() {
        switch (rng_() % 5) {
            case 0: {
                const Var& v = any_var();
                return make_atom(VarArgEqLabel{v.name, arg_of(v), any_label()});
            }
            case 1: {
                const Var& v = any_var();
                const Var& w = any_var();
                return make_atom(VarArgEqVarArg{v.name, arg_of(v), w.name, arg_of(w)});
            }
            case 2: {
                const Var& v = any_var();
                return make_atom(NatLeCount{rng_() % 4, v.name, any_label()});
            }
            case 3: {
                const Var& v = any_var();
                return make_atom(CountLeNat{v.name, any_label(), rng_() % 4});
            }
            default: {
                const Var& v = any_var();
                const Var& w = any_var();
                return make_atom(CountLeCount{v.name, any_label(), w.name, any_label()});
            }
        }
    }

    FormulaPtr random_formula(int depth) {
        if (depth == 0) return random_atom();
        switch (rng_() % 8) {
            case 0:
            case 1: return random_atom();
            case 2: return make_not(random_formula(depth - 1));
            case 3:
                return make_and(random_formula(depth - 1), random_formula(depth - 1));
            case 4: return make_or(random_formula(depth - 1), random_formula(depth - 1));
            case 5: {
                // exists with a positive guard
                auto [table, argset] = pick_guard(2);
                std::string name = fresh_name();
                scope_.push_back({name, argset});
                FormulaPtr body = make_and(make_atom(TableMembership{table, name}),
                                           random_formula(depth - 1));
                scope_.pop_back();
                return make_exists(name, argset, body);
            }
            case 6: {
                // forall guarded through the negation of its body
                auto [table, argset] = pick_guard(2);
                std::string name = fresh_name();
                scope_.push_back({name, argset});
                FormulaPtr body = make_or(make_not(make_atom(TableMembership{table, name})),
                                          random_formula(depth - 1));
                scope_.pop_back();
                return make_forall(name, argset, body);
            }
            default: {
                // occasional shadowing of an existing name
                auto [table, argset] = pick_guard(2);
                std::string name = scope_[rng_() % scope_.size()].name;
                scope_.push_back({name, argset});
                FormulaPtr body = make_and(make_atom(TableMembership{table, name}),
                                           random_formula(depth - 1));
                scope_.pop_back();
                return make_exists(name, argset, body);
            }
        }
    }

    std::string fresh_name() { return "w" + std::to_string(fresh_++); }

    std::mt19937& rng_;
    const Database& db_;
    std::vector<std::string> tables_;
    std::vector<Var> scope_;
    int fresh_ = 0;
};

}  // namespace testsupport
