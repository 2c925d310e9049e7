#pragma once

#include <string>

#include "arglab/query.hpp"

namespace arglab {

struct SqlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CREATE TABLE plus INSERT statements for every table, in name order.
/// Column names are the sorted argument ids as delimited identifiers; each
/// column carries a CHECK constraint restricting it to the label alphabet.
/// Table names are prefixed with "arglab_". Output is deterministic.
std::string export_schema_sql(const Database& db);

/// A single SELECT DISTINCT equivalent to evaluate(query): result rows are
/// the label tuples over the sorted binder argument set. Requires a
/// range-restricted query; quantifiers become EXISTS / NOT EXISTS and
/// count(v, l) becomes a CASE sum. Throws SqlError for queries that are not
/// range-restricted (naming the unguarded variables) and for the unsupported
/// shape where the binder has several distinct guard tables.
std::string translate_query(const QueryExpr& query, const Schema& schema);

}  // namespace arglab
