#pragma once

#include <vector>

#include "arglab/query.hpp"

namespace arglab {

/// Builders turning semantics derivations into queries over an existing
/// semantics table. Every builder returns a range-restricted query whose
/// evaluation matches the corresponding direct computation.

/// Rows with zero und and zero lc labels.
QueryExpr build_stable_query(const std::string& table, const std::set<ArgumentId>& header);

/// Rows not properly extended (same in/out commitments, strictly fewer
/// occurrences of the undecided label) by any other row. Pass "lc" as the
/// undecided label for tables in the two-valued weak sense.
QueryExpr build_preferred_query(const std::string& table, const std::set<ArgumentId>& header,
                                const Label& undecided_label = kUnd);

/// The row whose in/out commitments hold in every row.
QueryExpr build_grounded_query(const std::string& table, const std::set<ArgumentId>& header);

/// Column selection: { v : subset | tbl(v) }.
QueryExpr build_partial_query(const std::string& table, const std::set<ArgumentId>& subset);

/// Row selection by a fixed labelling fragment.
QueryExpr build_dependent_query(const std::string& table, const std::set<ArgumentId>& header,
                                const std::vector<std::pair<ArgumentId, Label>>& constraints);

/// Row selection by agreement with some row of a fragment table.
QueryExpr build_dependent_query_from_table(const std::string& table,
                                           const std::set<ArgumentId>& header,
                                           const std::string& fragment_table,
                                           const std::set<ArgumentId>& fragment_header);

/// Condition join: rows of the membership table whose restriction to each
/// part header appears in that part's table. Part headers must partition
/// the global header.
QueryExpr build_join_query(
    const std::vector<std::pair<std::string, std::set<ArgumentId>>>& parts,
    const std::string& membership_table, const std::set<ArgumentId>& global_header);

}  // namespace arglab
