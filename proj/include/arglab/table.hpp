#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arglab/labelling.hpp"

namespace arglab {

/// Header plus a duplicate-free body of labellings whose domain is exactly
/// the header. Value semantics; rows are kept in canonical order (sorted by
/// label tuple over the sorted header, labels ordered by the alphabet).
class ArgLabellingTable {
public:
    ArgLabellingTable() = default;
    ArgLabellingTable(std::set<ArgumentId> header, std::vector<Labelling> rows,
                      LabelAlphabet alphabet = LabelAlphabet());

    /// Header in sorted order, which is also the serialization column order.
    const std::vector<ArgumentId>& header() const { return header_; }
    std::set<ArgumentId> header_set() const;
    const std::vector<Labelling>& body() const { return body_; }
    const LabelAlphabet& alphabet() const { return alphabet_; }
    std::size_t row_count() const { return body_.size(); }
    bool contains_row(const Labelling& row) const;

    bool operator==(const ArgLabellingTable&) const = default;

private:
    std::vector<ArgumentId> header_;
    std::vector<Labelling> body_;
    LabelAlphabet alphabet_;
};

ArgLabellingTable make_table(const std::set<ArgumentId>& header, std::vector<Labelling> rows,
                             const LabelAlphabet& alphabet = LabelAlphabet());

/// Column selection; rows are restricted and deduplicated.
ArgLabellingTable project(const ArgLabellingTable& table, const std::set<ArgumentId>& cols);

ArgLabellingTable select_rows(const ArgLabellingTable& table,
                              const std::function<bool(const Labelling&)>& predicate);

/// Combines two tables with disjoint headers into labellings over
/// `target_header`, optionally keeping only rows present in `membership`.
ArgLabellingTable condition_join(const ArgLabellingTable& t1, const ArgLabellingTable& t2,
                                 const std::set<ArgumentId>& target_header,
                                 const std::optional<ArgLabellingTable>& membership = {});

ArgLabellingTable table_union(const ArgLabellingTable& t1, const ArgLabellingTable& t2);
ArgLabellingTable table_intersection(const ArgLabellingTable& t1, const ArgLabellingTable& t2);
ArgLabellingTable table_difference(const ArgLabellingTable& t1, const ArgLabellingTable& t2);

/// Names a finite label alphabet and a header per table name.
class Schema {
public:
    Schema() = default;
    Schema(LabelAlphabet labels, std::map<std::string, std::set<ArgumentId>> headers);

    const LabelAlphabet& labels() const { return labels_; }
    const std::map<std::string, std::set<ArgumentId>>& headers() const { return headers_; }
    bool has_table(const std::string& name) const { return headers_.count(name) > 0; }
    const std::set<ArgumentId>& header_of(const std::string& name) const;
    std::vector<std::string> table_names() const;

    bool operator==(const Schema&) const = default;

private:
    LabelAlphabet labels_;
    std::map<std::string, std::set<ArgumentId>> headers_;
};

/// Table names must parse as identifiers in the query language and must not
/// collide with its keywords.
bool is_valid_table_name(const std::string& name);

/// A schema together with one table per schema name; table headers and
/// alphabets are checked against the schema.
class Database {
public:
    Database() = default;
    Database(Schema schema, std::map<std::string, ArgLabellingTable> tables);

    const Schema& schema() const { return schema_; }
    const std::map<std::string, ArgLabellingTable>& tables() const { return tables_; }
    bool has_table(const std::string& name) const { return tables_.count(name) > 0; }
    const ArgLabellingTable& table(const std::string& name) const;

    bool operator==(const Database&) const = default;

private:
    Schema schema_;
    std::map<std::string, ArgLabellingTable> tables_;
};

/// Builds the schema from the tables themselves.
Database make_database(const LabelAlphabet& alphabet,
                       std::map<std::string, ArgLabellingTable> tables);

}  // namespace arglab
