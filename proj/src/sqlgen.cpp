#include "arglab/sqlgen.hpp"

#include <algorithm>
#include <sstream>

namespace arglab {

namespace {

std::string quote_ident(const std::string& name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string quote_label(const Label& l) {
    std::string out = "'";
    for (char c : l) {
        if (c == '\'') out += "''";
        else out += c;
    }
    out += "'";
    return out;
}

std::string sql_table(const std::string& name) { return quote_ident("arglab_" + name); }

std::string label_check(const LabelAlphabet& alphabet, const std::string& column) {
    std::ostringstream out;
    out << "CHECK (" << column << " IN (";
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (i > 0) out << ", ";
        out << quote_label(alphabet.labels()[i]);
    }
    out << "))";
    return out.str();
}

void collect_variable_names(const FormulaPtr& f, std::set<std::string>& names) {
    if (std::get_if<AtomicFormula>(&f->node)) return;
    if (const auto* n = std::get_if<NotF>(&f->node)) {
        collect_variable_names(n->inner, names);
    } else if (const auto* n = std::get_if<AndF>(&f->node)) {
        collect_variable_names(n->lhs, names);
        collect_variable_names(n->rhs, names);
    } else if (const auto* n = std::get_if<OrF>(&f->node)) {
        collect_variable_names(n->lhs, names);
        collect_variable_names(n->rhs, names);
    } else if (const auto* n = std::get_if<ExistsF>(&f->node)) {
        names.insert(n->var);
        collect_variable_names(n->body, names);
    } else if (const auto* n = std::get_if<ForallF>(&f->node)) {
        names.insert(n->var);
        collect_variable_names(n->body, names);
    }
}

// Membership guards of `var` under the wanted polarity, shadow-aware.
void collect_guard_tables(const FormulaPtr& f, const std::string& var, int want,
                          std::set<std::string>& out) {
    if (const auto* atom = std::get_if<AtomicFormula>(&f->node)) {
        if (want == +1) {
            if (const auto* m = std::get_if<TableMembership>(atom)) {
                if (m->var == var) out.insert(m->table);
            }
        }
        return;
    }
    if (const auto* n = std::get_if<NotF>(&f->node)) {
        collect_guard_tables(n->inner, var, -want, out);
    } else if (const auto* n = std::get_if<AndF>(&f->node)) {
        collect_guard_tables(n->lhs, var, want, out);
        collect_guard_tables(n->rhs, var, want, out);
    } else if (const auto* n = std::get_if<OrF>(&f->node)) {
        collect_guard_tables(n->lhs, var, want, out);
        collect_guard_tables(n->rhs, var, want, out);
    } else if (const auto* n = std::get_if<ExistsF>(&f->node)) {
        if (n->var != var) collect_guard_tables(n->body, var, want, out);
    } else if (const auto* n = std::get_if<ForallF>(&f->node)) {
        if (n->var != var) collect_guard_tables(n->body, var, want, out);
    }
}

class Translator {
public:
    explicit Translator(const QueryExpr& query) {
        std::set<std::string> names{query.var};
        collect_variable_names(query.formula, names);
        prefix_ = "m";
        while (true) {
            bool clash = std::any_of(names.begin(), names.end(), [&](const std::string& n) {
                return n.rfind(prefix_, 0) == 0;
            });
            if (!clash) break;
            prefix_ += "_";
        }
    }

    void push_scope(const std::string& var, const std::set<ArgumentId>& argset) {
        scopes_.push_back({var, {argset.begin(), argset.end()}});
    }
    void pop_scope() { scopes_.pop_back(); }

    std::string translate(const FormulaPtr& f) {
        if (const auto* atom = std::get_if<AtomicFormula>(&f->node)) return translate_atom(*atom);
        if (const auto* n = std::get_if<NotF>(&f->node))
            return "NOT (" + translate(n->inner) + ")";
        if (const auto* n = std::get_if<AndF>(&f->node))
            return "(" + translate(n->lhs) + " AND " + translate(n->rhs) + ")";
        if (const auto* n = std::get_if<OrF>(&f->node))
            return "(" + translate(n->lhs) + " OR " + translate(n->rhs) + ")";
        if (const auto* n = std::get_if<ExistsF>(&f->node)) {
            auto guards = guard_tables(n->body, n->var, +1);
            push_scope(n->var, n->argset);
            std::string body = translate(n->body);
            pop_scope();
            std::string out;
            for (const auto& g : guards) {
                if (!out.empty()) out += " OR ";
                out += "EXISTS (SELECT 1 FROM " + sql_table(g) + " AS " + quote_ident(n->var) +
                       " WHERE " + body + ")";
            }
            return "(" + out + ")";
        }
        const auto* n = std::get_if<ForallF>(&f->node);
        auto guards = guard_tables(n->body, n->var, -1);
        push_scope(n->var, n->argset);
        std::string body = translate(n->body);
        pop_scope();
        std::string out;
        for (const auto& g : guards) {
            if (!out.empty()) out += " AND ";
            out += "NOT EXISTS (SELECT 1 FROM " + sql_table(g) + " AS " + quote_ident(n->var) +
                   " WHERE NOT (" + body + "))";
        }
        return "(" + out + ")";
    }

    std::vector<std::string> guard_tables(const FormulaPtr& f, const std::string& var,
                                          int want) const {
        std::set<std::string> tables;
        collect_guard_tables(f, var, want, tables);
        if (tables.empty())
            throw SqlError("variable '" + var + "' has no membership guard");
        return {tables.begin(), tables.end()};
    }

private:
    struct Scope {
        std::string var;
        std::vector<ArgumentId> args;  // sorted
    };

    const Scope& scope_of(const std::string& var) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            if (it->var == var) return *it;
        }
        throw SqlError("variable '" + var + "' is not bound");
    }

    std::string column(const std::string& var, const ArgumentId& arg) const {
        return quote_ident(var) + "." + quote_ident(arg);
    }

    std::string count_sum(const std::string& var, const Label& label) const {
        const Scope& scope = scope_of(var);
        if (scope.args.empty()) return "0";
        std::string out = "(";
        for (std::size_t i = 0; i < scope.args.size(); ++i) {
            if (i > 0) out += " + ";
            out += "CASE WHEN " + column(var, scope.args[i]) + " = " + quote_label(label) +
                   " THEN 1 ELSE 0 END";
        }
        out += ")";
        return out;
    }

    std::string membership(const TableMembership& m) {
        const Scope& scope = scope_of(m.var);
        std::string alias = prefix_ + std::to_string(fresh_counter_++);
        std::string out =
            "EXISTS (SELECT 1 FROM " + sql_table(m.table) + " AS " + quote_ident(alias);
        if (!scope.args.empty()) {
            out += " WHERE ";
            for (std::size_t i = 0; i < scope.args.size(); ++i) {
                if (i > 0) out += " AND ";
                out += quote_ident(alias) + "." + quote_ident(scope.args[i]) + " = " +
                       column(m.var, scope.args[i]);
            }
        }
        out += ")";
        return out;
    }

    std::string translate_atom(const AtomicFormula& atom) {
        return std::visit(
            [&](const auto& a) -> std::string {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, VarArgEqVarArg>) {
                    return column(a.var1, a.arg1) + " = " + column(a.var2, a.arg2);
                } else if constexpr (std::is_same_v<T, VarArgEqLabel>) {
                    return column(a.var, a.arg) + " = " + quote_label(a.label);
                } else if constexpr (std::is_same_v<T, TableMembership>) {
                    return membership(a);
                } else if constexpr (std::is_same_v<T, CountLeCount>) {
                    return count_sum(a.var1, a.label1) + " <= " + count_sum(a.var2, a.label2);
                } else if constexpr (std::is_same_v<T, CountLeNat>) {
                    return count_sum(a.var, a.label) + " <= " + std::to_string(a.bound);
                } else {
                    return std::to_string(a.bound) + " <= " + count_sum(a.var, a.label);
                }
            },
            atom);
    }

    std::vector<Scope> scopes_;
    std::string prefix_;
    int fresh_counter_ = 0;
};

}  // namespace

std::string export_schema_sql(const Database& db) {
    const auto& alphabet = db.schema().labels();
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, table] : db.tables()) {
        if (table.header().empty())
            throw SqlError("table '" + name + "' has an empty header; SQL tables need a column");
        if (!first) out << "\n";
        first = false;
        out << "CREATE TABLE " << sql_table(name) << " (\n";
        for (std::size_t i = 0; i < table.header().size(); ++i) {
            std::string col = quote_ident(table.header()[i]);
            out << "  " << col << " TEXT NOT NULL " << label_check(alphabet, col);
            if (i + 1 < table.header().size()) out << ",";
            out << "\n";
        }
        out << ");\n";
        std::string columns;
        for (std::size_t i = 0; i < table.header().size(); ++i) {
            if (i > 0) columns += ", ";
            columns += quote_ident(table.header()[i]);
        }
        for (const auto& row : table.body()) {
            out << "INSERT INTO " << sql_table(name) << " (" << columns << ") VALUES (";
            for (std::size_t i = 0; i < table.header().size(); ++i) {
                if (i > 0) out << ", ";
                out << quote_label(row.at(table.header()[i]));
            }
            out << ");\n";
        }
    }
    return out.str();
}

std::string translate_query(const QueryExpr& query, const Schema& schema) {
    auto report = check_wellformed(query, schema);
    if (!report.ok) {
        std::string message = "query is not well-formed:";
        for (const auto& e : report.errors) message += " " + e + ";";
        throw SqlError(message);
    }
    if (!report.range_restricted) {
        std::string names;
        for (const auto& v : report.unguarded) names += (names.empty() ? "" : ", ") + v;
        throw SqlError("query is not range-restricted: variable(s) " + names +
                       " lack a positive membership guard");
    }

    Translator translator(query);
    auto binder_guards = translator.guard_tables(query.formula, query.var, +1);
    if (binder_guards.size() != 1)
        throw SqlError("binder variable '" + query.var +
                       "' has several guard tables; SQL translation supports a single guard");

    translator.push_scope(query.var, query.argset);
    std::string condition = translator.translate(query.formula);
    translator.pop_scope();

    std::vector<ArgumentId> columns(query.argset.begin(), query.argset.end());
    std::ostringstream out;
    out << "SELECT DISTINCT ";
    if (columns.empty()) {
        // A zero-column projection cannot be spelled in SQL; emit a marker
        // column so emptiness of the result can still be observed.
        out << "1 AS " << quote_ident("nonempty");
    } else {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i > 0) out << ", ";
            out << quote_ident(query.var) << "." << quote_ident(columns[i]) << " AS "
                << quote_ident(columns[i]);
        }
    }
    out << "\nFROM " << sql_table(binder_guards[0]) << " AS " << quote_ident(query.var)
        << "\nWHERE " << condition << ";\n";
    return out.str();
}

}  // namespace arglab
