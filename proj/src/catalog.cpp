#include "arglab/catalog.hpp"

#include <stdexcept>

namespace arglab {

namespace {

// ((not v.a == "in" and not v.a == "out") or w.a == v.a) for every header
// argument: w preserves every in/out commitment of v.
FormulaPtr extends_formula(const std::string& v, const std::string& w,
                           const std::set<ArgumentId>& header) {
    std::vector<FormulaPtr> parts;
    for (const auto& a : header) {
        FormulaPtr undecided = make_and(make_not(make_atom(VarArgEqLabel{v, a, kIn})),
                                        make_not(make_atom(VarArgEqLabel{v, a, kOut})));
        FormulaPtr agrees = make_atom(VarArgEqVarArg{w, a, v, a});
        parts.push_back(make_or(std::move(undecided), std::move(agrees)));
    }
    return make_conjunction(parts);
}

std::string fresh_var(const std::string& base, const std::set<std::string>& used) {
    if (!used.count(base)) return base;
    for (int i = 2;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!used.count(candidate)) return candidate;
    }
}

}  // namespace

QueryExpr build_stable_query(const std::string& table, const std::set<ArgumentId>& header) {
    FormulaPtr f = make_conjunction({make_atom(TableMembership{table, "v"}),
                                     make_not(make_atom(NatLeCount{1, "v", kUnd})),
                                     make_not(make_atom(NatLeCount{1, "v", kLc}))});
    return QueryExpr{"v", header, std::move(f)};
}

QueryExpr build_preferred_query(const std::string& table, const std::set<ArgumentId>& header,
                                const Label& undecided_label) {
    FormulaPtr guard = make_atom(TableMembership{table, "v"});
    if (header.empty()) return QueryExpr{"v", header, std::move(guard)};
    // v2 properly extends v when it keeps v's commitments and has strictly
    // fewer undecided labels.
    FormulaPtr proper_extension =
        make_and(extends_formula("v", "v2", header),
                 make_not(make_atom(CountLeCount{"v", undecided_label, "v2", undecided_label})));
    FormulaPtr body = make_or(make_not(make_atom(TableMembership{table, "v2"})),
                              make_not(std::move(proper_extension)));
    FormulaPtr f = make_and(std::move(guard), make_forall("v2", header, std::move(body)));
    return QueryExpr{"v", header, std::move(f)};
}

QueryExpr build_grounded_query(const std::string& table, const std::set<ArgumentId>& header) {
    FormulaPtr guard = make_atom(TableMembership{table, "v"});
    if (header.empty()) return QueryExpr{"v", header, std::move(guard)};
    FormulaPtr body = make_or(make_not(make_atom(TableMembership{table, "v2"})),
                              extends_formula("v", "v2", header));
    FormulaPtr f = make_and(std::move(guard), make_forall("v2", header, std::move(body)));
    return QueryExpr{"v", header, std::move(f)};
}

QueryExpr build_partial_query(const std::string& table, const std::set<ArgumentId>& subset) {
    return QueryExpr{"v", subset, make_atom(TableMembership{table, "v"})};
}

QueryExpr build_dependent_query(const std::string& table, const std::set<ArgumentId>& header,
                                const std::vector<std::pair<ArgumentId, Label>>& constraints) {
    std::vector<FormulaPtr> parts{make_atom(TableMembership{table, "v"})};
    for (const auto& [a, l] : constraints) {
        if (!header.count(a))
            throw std::invalid_argument("constraint argument '" + a + "' is outside the header");
        parts.push_back(make_atom(VarArgEqLabel{"v", a, l}));
    }
    return QueryExpr{"v", header, make_conjunction(parts)};
}

QueryExpr build_dependent_query_from_table(const std::string& table,
                                           const std::set<ArgumentId>& header,
                                           const std::string& fragment_table,
                                           const std::set<ArgumentId>& fragment_header) {
    for (const auto& a : fragment_header) {
        if (!header.count(a))
            throw std::invalid_argument("fragment argument '" + a + "' is outside the header");
    }
    std::vector<FormulaPtr> agreement{make_atom(TableMembership{fragment_table, "vx"})};
    for (const auto& a : fragment_header)
        agreement.push_back(make_atom(VarArgEqVarArg{"v", a, "vx", a}));
    FormulaPtr f = make_and(make_atom(TableMembership{table, "v"}),
                            make_exists("vx", fragment_header, make_conjunction(agreement)));
    return QueryExpr{"v", header, std::move(f)};
}

QueryExpr build_join_query(
    const std::vector<std::pair<std::string, std::set<ArgumentId>>>& parts,
    const std::string& membership_table, const std::set<ArgumentId>& global_header) {
    std::set<ArgumentId> seen;
    std::set<std::string> used_vars{"v"};
    for (const auto& [name, part_header] : parts) {
        if (part_header.empty())
            throw std::invalid_argument("part '" + name + "' has an empty header");
        for (const auto& a : part_header) {
            if (!global_header.count(a))
                throw std::invalid_argument("part argument '" + a +
                                            "' is outside the global header");
            if (!seen.insert(a).second)
                throw std::invalid_argument("part headers overlap at '" + a + "'");
        }
    }
    if (seen != global_header)
        throw std::invalid_argument("part headers do not cover the global header");

    std::vector<FormulaPtr> conjuncts{make_atom(TableMembership{membership_table, "v"})};
    int index = 1;
    for (const auto& [name, part_header] : parts) {
        std::string var = fresh_var("v" + std::to_string(index++), used_vars);
        used_vars.insert(var);
        std::vector<FormulaPtr> inner{make_atom(TableMembership{name, var})};
        for (const auto& a : part_header)
            inner.push_back(make_atom(VarArgEqVarArg{"v", a, var, a}));
        conjuncts.push_back(make_exists(var, part_header, make_conjunction(inner)));
    }
    return QueryExpr{"v", global_header, make_conjunction(conjuncts)};
}

}  // namespace arglab
