#include "arglab/table.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace arglab {

namespace {

std::vector<std::size_t> label_indices(const Labelling& row,
                                       const std::vector<ArgumentId>& header,
                                       const LabelAlphabet& alphabet) {
    std::vector<std::size_t> indices;
    indices.reserve(header.size());
    for (const auto& a : header) indices.push_back(alphabet.index_of(row.at(a)));
    return indices;
}

const std::set<std::string> kQueryKeywords = {"exists", "forall", "not", "and",
                                              "or",     "count",  "header"};

}  // namespace

ArgLabellingTable::ArgLabellingTable(std::set<ArgumentId> header, std::vector<Labelling> rows,
                                     LabelAlphabet alphabet)
    : header_(header.begin(), header.end()), alphabet_(std::move(alphabet)) {
    for (const auto& row : rows) {
        if (row.domain() != header)
            throw std::invalid_argument("row domain does not match the table header");
        for (const auto& [_, l] : row.assignment()) {
            if (!alphabet_.contains(l))
                throw std::invalid_argument("row label '" + l + "' is not in the alphabet");
        }
    }
    std::sort(rows.begin(), rows.end(), [&](const Labelling& x, const Labelling& y) {
        return label_indices(x, header_, alphabet_) < label_indices(y, header_, alphabet_);
    });
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    body_ = std::move(rows);
}

std::set<ArgumentId> ArgLabellingTable::header_set() const {
    return std::set<ArgumentId>(header_.begin(), header_.end());
}

bool ArgLabellingTable::contains_row(const Labelling& row) const {
    return std::find(body_.begin(), body_.end(), row) != body_.end();
}

ArgLabellingTable make_table(const std::set<ArgumentId>& header, std::vector<Labelling> rows,
                             const LabelAlphabet& alphabet) {
    return ArgLabellingTable(header, std::move(rows), alphabet);
}

ArgLabellingTable project(const ArgLabellingTable& table, const std::set<ArgumentId>& cols) {
    auto header = table.header_set();
    for (const auto& c : cols) {
        if (!header.count(c))
            throw std::invalid_argument("column '" + c + "' is not in the table header");
    }
    std::vector<Labelling> rows;
    rows.reserve(table.body().size());
    for (const auto& row : table.body()) rows.push_back(restrict_labelling(row, cols));
    return ArgLabellingTable(cols, std::move(rows), table.alphabet());
}

ArgLabellingTable select_rows(const ArgLabellingTable& table,
                              const std::function<bool(const Labelling&)>& predicate) {
    std::vector<Labelling> rows;
    for (const auto& row : table.body()) {
        if (predicate(row)) rows.push_back(row);
    }
    return ArgLabellingTable(table.header_set(), std::move(rows), table.alphabet());
}

ArgLabellingTable condition_join(const ArgLabellingTable& t1, const ArgLabellingTable& t2,
                                 const std::set<ArgumentId>& target_header,
                                 const std::optional<ArgLabellingTable>& membership) {
    if (!(t1.alphabet() == t2.alphabet()))
        throw std::invalid_argument("join requires equal alphabets");
    auto h1 = t1.header_set();
    auto h2 = t2.header_set();
    for (const auto& a : h1) {
        if (h2.count(a)) throw std::invalid_argument("join headers overlap at '" + a + "'");
    }
    std::set<ArgumentId> combined = h1;
    combined.insert(h2.begin(), h2.end());
    if (combined != target_header)
        throw std::invalid_argument("join headers do not cover the target header");
    if (membership && membership->header_set() != target_header)
        throw std::invalid_argument("membership table header must equal the target header");

    std::vector<Labelling> rows;
    for (const auto& r1 : t1.body()) {
        for (const auto& r2 : t2.body()) {
            std::map<ArgumentId, Label> merged = r1.assignment();
            merged.insert(r2.assignment().begin(), r2.assignment().end());
            Labelling row(std::move(merged));
            if (!membership || membership->contains_row(row)) rows.push_back(std::move(row));
        }
    }
    return ArgLabellingTable(target_header, std::move(rows), t1.alphabet());
}

namespace {

ArgLabellingTable set_op(const ArgLabellingTable& t1, const ArgLabellingTable& t2,
                         bool keep_shared, bool keep_left_only) {
    if (t1.header() != t2.header() || !(t1.alphabet() == t2.alphabet()))
        throw std::invalid_argument("set operation requires equal headers and alphabets");
    std::vector<Labelling> rows;
    for (const auto& row : t1.body()) {
        bool shared = t2.contains_row(row);
        if ((shared && keep_shared) || (!shared && keep_left_only)) rows.push_back(row);
    }
    return ArgLabellingTable(t1.header_set(), std::move(rows), t1.alphabet());
}

}  // namespace

ArgLabellingTable table_union(const ArgLabellingTable& t1, const ArgLabellingTable& t2) {
    if (t1.header() != t2.header() || !(t1.alphabet() == t2.alphabet()))
        throw std::invalid_argument("set operation requires equal headers and alphabets");
    std::vector<Labelling> rows = t1.body();
    rows.insert(rows.end(), t2.body().begin(), t2.body().end());
    return ArgLabellingTable(t1.header_set(), std::move(rows), t1.alphabet());
}

ArgLabellingTable table_intersection(const ArgLabellingTable& t1, const ArgLabellingTable& t2) {
    return set_op(t1, t2, true, false);
}

ArgLabellingTable table_difference(const ArgLabellingTable& t1, const ArgLabellingTable& t2) {
    return set_op(t1, t2, false, true);
}

bool is_valid_table_name(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return kQueryKeywords.count(name) == 0;
}

Schema::Schema(LabelAlphabet labels, std::map<std::string, std::set<ArgumentId>> headers)
    : labels_(std::move(labels)), headers_(std::move(headers)) {
    for (const auto& [name, header] : headers_) {
        if (!is_valid_table_name(name))
            throw std::invalid_argument("invalid table name '" + name + "'");
        for (const auto& a : header) {
            if (!is_valid_argument_id(a))
                throw std::invalid_argument("invalid argument id '" + a + "' in header of '" +
                                            name + "'");
        }
    }
}

const std::set<ArgumentId>& Schema::header_of(const std::string& name) const {
    auto it = headers_.find(name);
    if (it == headers_.end()) throw std::invalid_argument("unknown table '" + name + "'");
    return it->second;
}

std::vector<std::string> Schema::table_names() const {
    std::vector<std::string> names;
    names.reserve(headers_.size());
    for (const auto& [name, _] : headers_) names.push_back(name);
    return names;
}

Database::Database(Schema schema, std::map<std::string, ArgLabellingTable> tables)
    : schema_(std::move(schema)), tables_(std::move(tables)) {
    for (const auto& [name, _] : schema_.headers()) {
        if (!tables_.count(name))
            throw std::invalid_argument("schema table '" + name + "' has no assigned table");
    }
    for (const auto& [name, table] : tables_) {
        if (!schema_.has_table(name))
            throw std::invalid_argument("table '" + name + "' is not in the schema");
        if (table.header_set() != schema_.header_of(name))
            throw std::invalid_argument("table '" + name + "' header does not match the schema");
        if (!(table.alphabet() == schema_.labels()))
            throw std::invalid_argument("table '" + name + "' alphabet does not match the schema");
    }
}

const ArgLabellingTable& Database::table(const std::string& name) const {
    auto it = tables_.find(name);
    if (it == tables_.end()) throw std::invalid_argument("unknown table '" + name + "'");
    return it->second;
}

Database make_database(const LabelAlphabet& alphabet,
                       std::map<std::string, ArgLabellingTable> tables) {
    std::map<std::string, std::set<ArgumentId>> headers;
    for (const auto& [name, table] : tables) headers.emplace(name, table.header_set());
    return Database(Schema(alphabet, std::move(headers)), std::move(tables));
}

}  // namespace arglab
