#pragma once

#include <map>
#include <string>

#include "arglab/query.hpp"

namespace arglab {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalOptions {
    /// Restores the strict membership reading: tbl(v) holds only when the
    /// value of v has exactly the table header as domain and is a body row.
    /// The default reading also accepts values whose domain is a subset of
    /// the header and that agree with the restriction of some body row.
    bool strict_membership = false;
};

/// An assignment of labellings to the free variables of a formula.
using Interpretation = std::map<std::string, Labelling>;

/// Truth of a formula under an interpretation. Quantifiers range over every
/// labelling with the annotated domain and labels from the database alphabet.
bool models(const Database& db, const Interpretation& env, const FormulaPtr& formula,
            const EvalOptions& options = {});

/// Reference evaluation of { v : A | F }: enumerates all |L|^|A| candidate
/// labellings for the binder and keeps the satisfying ones.
ArgLabellingTable evaluate(const QueryExpr& query, const Database& db,
                           const EvalOptions& options = {});

/// Same result as evaluate() for range-restricted queries, but every
/// variable only enumerates projections of its guard tables' rows. Rejects
/// queries that are not range-restricted.
ArgLabellingTable evaluate_guarded(const QueryExpr& query, const Database& db,
                                   const EvalOptions& options = {});

}  // namespace arglab
