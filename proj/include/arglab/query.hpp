#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "arglab/table.hpp"

namespace arglab {

// Atoms of the query language. Variables denote labellings; v.a reads the
// label of argument a under v.
struct VarArgEqVarArg {
    std::string var1;
    ArgumentId arg1;
    std::string var2;
    ArgumentId arg2;
};
struct VarArgEqLabel {
    std::string var;
    ArgumentId arg;
    Label label;
};
struct TableMembership {
    std::string table;
    std::string var;
};
struct CountLeCount {
    std::string var1;
    Label label1;
    std::string var2;
    Label label2;
};
struct CountLeNat {
    std::string var;
    Label label;
    std::uint64_t bound;
};
struct NatLeCount {
    std::uint64_t bound;
    std::string var;
    Label label;
};

using AtomicFormula = std::variant<VarArgEqVarArg, VarArgEqLabel, TableMembership, CountLeCount,
                                   CountLeNat, NatLeCount>;

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct NotF {
    FormulaPtr inner;
};
struct AndF {
    FormulaPtr lhs;
    FormulaPtr rhs;
};
struct OrF {
    FormulaPtr lhs;
    FormulaPtr rhs;
};
struct ExistsF {
    std::string var;
    std::set<ArgumentId> argset;
    FormulaPtr body;
};
struct ForallF {
    std::string var;
    std::set<ArgumentId> argset;
    FormulaPtr body;
};

struct Formula {
    std::variant<AtomicFormula, NotF, AndF, OrF, ExistsF, ForallF> node;
};

FormulaPtr make_atom(AtomicFormula atom);
FormulaPtr make_not(FormulaPtr inner);
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_exists(std::string var, std::set<ArgumentId> argset, FormulaPtr body);
FormulaPtr make_forall(std::string var, std::set<ArgumentId> argset, FormulaPtr body);
/// Left-associated conjunction/disjunction of a non-empty list.
FormulaPtr make_conjunction(const std::vector<FormulaPtr>& parts);
FormulaPtr make_disjunction(const std::vector<FormulaPtr>& parts);

/// A bound query { v : A | F } where v is the only free variable of F.
struct QueryExpr {
    std::string var;
    std::set<ArgumentId> argset;
    FormulaPtr formula;
};

/// Parses the concrete syntax, resolving table and label names against the
/// schema and checking scoping. Errors are reported with line/column.
///
/// Grammar sketch (precedence: not > and > or; parentheses allowed):
///   query    = "{" VAR ":" argset "|" formula "}"
///   argset   = "{" [id ("," id)*] "}" | "header" "(" table ")"
///   formula  = disjunction of conjunctions of ("not")* primaries
///   primary  = "(" formula ")" | quantifier | atom
///   quantifier = ("exists"|"forall") VAR ":" argset "[" formula "]"
///   atom     = VAR "." id "==" (VAR "." id | STRING)
///            | table "(" VAR ")"
///            | "count" "(" VAR "," STRING ")" "<=" ("count" "(" VAR "," STRING ")" | NAT)
///            | NAT "<=" "count" "(" VAR "," STRING ")"
QueryExpr parse_query(const std::string& text, const Schema& schema);

std::string pretty_print(const QueryExpr& query);
std::string pretty_print(const FormulaPtr& formula);

struct WellformednessReport {
    bool ok = false;                  // true when errors is empty
    std::vector<std::string> errors;  // binding/name violations
    /// Binding sets in binding-site order: the query binder first, then
    /// quantifiers in syntactic order.
    std::vector<std::pair<std::string, std::set<ArgumentId>>> bindings;
    /// Binder or quantifier variables that lack a positive membership guard
    /// (for forall variables, in the negation of the body).
    std::vector<std::string> unguarded;
    bool range_restricted = false;
};

/// Static analysis: name resolution against the schema, binding-set checks
/// for every atom, membership-header containment, and the range-restriction
/// (guardedness) classification used by the guarded evaluator and the SQL
/// translator.
WellformednessReport check_wellformed(const QueryExpr& query, const Schema& schema);

}  // namespace arglab
