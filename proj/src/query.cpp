#include "arglab/query.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace arglab {

FormulaPtr make_atom(AtomicFormula atom) {
    return std::make_shared<const Formula>(Formula{std::move(atom)});
}
FormulaPtr make_not(FormulaPtr inner) {
    return std::make_shared<const Formula>(Formula{NotF{std::move(inner)}});
}
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs) {
    return std::make_shared<const Formula>(Formula{AndF{std::move(lhs), std::move(rhs)}});
}
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs) {
    return std::make_shared<const Formula>(Formula{OrF{std::move(lhs), std::move(rhs)}});
}
FormulaPtr make_exists(std::string var, std::set<ArgumentId> argset, FormulaPtr body) {
    return std::make_shared<const Formula>(
        Formula{ExistsF{std::move(var), std::move(argset), std::move(body)}});
}
FormulaPtr make_forall(std::string var, std::set<ArgumentId> argset, FormulaPtr body) {
    return std::make_shared<const Formula>(
        Formula{ForallF{std::move(var), std::move(argset), std::move(body)}});
}

FormulaPtr make_conjunction(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) throw std::invalid_argument("conjunction of zero formulas");
    FormulaPtr result = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) result = make_and(result, parts[i]);
    return result;
}

FormulaPtr make_disjunction(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) throw std::invalid_argument("disjunction of zero formulas");
    FormulaPtr result = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) result = make_or(result, parts[i]);
    return result;
}

namespace {

const std::set<std::string> kKeywords = {"exists", "forall", "not", "and",
                                         "or",     "count",  "header"};

struct Token {
    enum Kind { Ident, Number, String, Punct, End } kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    auto is_ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            tokens.push_back({Token::Ident, text.substr(i, j - i), tl, tc});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            tokens.push_back({Token::Number, text.substr(i, j - i), tl, tc});
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"')
                throw ParseError("unterminated string literal", tl, tc);
            tokens.push_back({Token::String, text.substr(i + 1, j - i - 1), tl, tc});
            advance(j - i + 1);
        } else if (c == '=' || c == '<') {
            if (i + 1 >= text.size() || text[i + 1] != '=')
                throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
            tokens.push_back({Token::Punct, std::string(1, c) + "=", tl, tc});
            advance(2);
        } else if (std::string("{}()[]|:,.").find(c) != std::string::npos) {
            tokens.push_back({Token::Punct, std::string(1, c), tl, tc});
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
        }
    }
    tokens.push_back({Token::End, "", line, col});
    return tokens;
}

class Parser {
public:
    Parser(const std::string& text, const Schema& schema)
        : tokens_(tokenize(text)), schema_(schema) {}

    QueryExpr parse_query_expr() {
        expect_punct("{");
        std::string var = parse_variable_name();
        expect_punct(":");
        auto argset = parse_argset();
        expect_punct("|");
        bindings_.push_back({var, argset});
        FormulaPtr formula = parse_formula();
        bindings_.pop_back();
        expect_punct("}");
        if (peek().kind != Token::End)
            throw ParseError("trailing input after query", peek().line, peek().col);
        return QueryExpr{std::move(var), std::move(argset), std::move(formula)};
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    Token take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
    bool at_punct(const std::string& p) const {
        return peek().kind == Token::Punct && peek().text == p;
    }
    bool at_keyword(const std::string& k) const {
        return peek().kind == Token::Ident && peek().text == k;
    }
    void expect_punct(const std::string& p) {
        if (!at_punct(p))
            throw ParseError("expected '" + p + "'", peek().line, peek().col);
        take();
    }

    std::string parse_variable_name() {
        const Token& t = peek();
        if (t.kind != Token::Ident)
            throw ParseError("expected a variable name", t.line, t.col);
        if (kKeywords.count(t.text))
            throw ParseError("keyword '" + t.text + "' cannot be a variable name", t.line, t.col);
        return take().text;
    }

    // An argument id; numbers are allowed so numeric ids survive.
    std::string parse_argument_id() {
        const Token& t = peek();
        if (t.kind != Token::Ident && t.kind != Token::Number)
            throw ParseError("expected an argument id", t.line, t.col);
        return take().text;
    }

    std::set<ArgumentId> parse_argset() {
        if (at_keyword("header")) {
            take();
            expect_punct("(");
            const Token& t = peek();
            if (t.kind != Token::Ident)
                throw ParseError("expected a table name", t.line, t.col);
            std::string table = take().text;
            if (!schema_.has_table(table))
                throw ParseError("unknown table '" + table + "'", t.line, t.col);
            expect_punct(")");
            return schema_.header_of(table);
        }
        expect_punct("{");
        std::set<ArgumentId> argset;
        if (!at_punct("}")) {
            argset.insert(parse_argument_id());
            while (at_punct(",")) {
                take();
                argset.insert(parse_argument_id());
            }
        }
        expect_punct("}");
        return argset;
    }

    FormulaPtr parse_formula() {
        FormulaPtr lhs = parse_conjunction();
        while (at_keyword("or")) {
            take();
            lhs = make_or(std::move(lhs), parse_conjunction());
        }
        return lhs;
    }

    FormulaPtr parse_conjunction() {
        FormulaPtr lhs = parse_negation();
        while (at_keyword("and")) {
            take();
            lhs = make_and(std::move(lhs), parse_negation());
        }
        return lhs;
    }

    FormulaPtr parse_negation() {
        if (at_keyword("not")) {
            take();
            return make_not(parse_negation());
        }
        return parse_primary();
    }

    FormulaPtr parse_primary() {
        if (at_punct("(")) {
            take();
            FormulaPtr inner = parse_formula();
            expect_punct(")");
            return inner;
        }
        if (at_keyword("exists") || at_keyword("forall")) {
            bool is_exists = take().text == "exists";
            std::string var = parse_variable_name();
            expect_punct(":");
            auto argset = parse_argset();
            expect_punct("[");
            bindings_.push_back({var, argset});
            FormulaPtr body = parse_formula();
            bindings_.pop_back();
            expect_punct("]");
            return is_exists ? make_exists(std::move(var), std::move(argset), std::move(body))
                             : make_forall(std::move(var), std::move(argset), std::move(body));
        }
        return parse_atom();
    }

    FormulaPtr parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Number) {
            std::uint64_t n = parse_nat();
            expect_punct("<=");
            if (peek().kind == Token::Number)
                throw ParseError("a comparison of two numerals is not a formula", peek().line,
                                 peek().col);
            auto [var, label] = parse_count_args();
            return make_atom(NatLeCount{n, var, label});
        }
        if (t.kind != Token::Ident)
            throw ParseError("expected a formula", t.line, t.col);
        if (t.text == "count") {
            auto [var, label] = parse_count_args();
            expect_punct("<=");
            if (peek().kind == Token::Number) {
                std::uint64_t n = parse_nat();
                return make_atom(CountLeNat{var, label, n});
            }
            auto [var2, label2] = parse_count_args();
            return make_atom(CountLeCount{var, label, var2, label2});
        }
        if (kKeywords.count(t.text))
            throw ParseError("unexpected keyword '" + t.text + "'", t.line, t.col);
        if (peek(1).kind == Token::Punct && peek(1).text == "(") {
            // table membership
            std::string table = take().text;
            if (!schema_.has_table(table))
                throw ParseError("unknown table '" + table + "'", t.line, t.col);
            expect_punct("(");
            std::string var = parse_bound_variable();
            expect_punct(")");
            return make_atom(TableMembership{table, var});
        }
        // v.a == ...
        std::string var = parse_bound_variable();
        expect_punct(".");
        const Token& at = peek();
        std::string arg = parse_argument_id();
        check_arg_in_binding(var, arg, at);
        expect_punct("==");
        if (peek().kind == Token::String) {
            const Token& lt = peek();
            std::string label = take().text;
            if (!schema_.labels().contains(label))
                throw ParseError("unknown label '" + label + "'", lt.line, lt.col);
            return make_atom(VarArgEqLabel{var, arg, label});
        }
        std::string var2 = parse_bound_variable();
        expect_punct(".");
        const Token& at2 = peek();
        std::string arg2 = parse_argument_id();
        check_arg_in_binding(var2, arg2, at2);
        return make_atom(VarArgEqVarArg{var, arg, var2, arg2});
    }

    std::uint64_t parse_nat() {
        const Token& t = peek();
        try {
            return std::stoull(take().text);
        } catch (const std::exception&) {
            throw ParseError("numeral out of range", t.line, t.col);
        }
    }

    std::pair<std::string, Label> parse_count_args() {
        const Token& t = peek();
        if (t.kind != Token::Ident || t.text != "count")
            throw ParseError("expected count(...)", t.line, t.col);
        take();
        expect_punct("(");
        std::string var = parse_bound_variable();
        expect_punct(",");
        const Token& lt = peek();
        if (lt.kind != Token::String)
            throw ParseError("expected a quoted label", lt.line, lt.col);
        std::string label = take().text;
        if (!schema_.labels().contains(label))
            throw ParseError("unknown label '" + label + "'", lt.line, lt.col);
        expect_punct(")");
        return {var, label};
    }

    std::string parse_bound_variable() {
        const Token& t = peek();
        std::string var = parse_variable_name();
        if (!binding_of(var))
            throw ParseError("variable '" + var + "' is not bound here", t.line, t.col);
        return var;
    }

    const std::set<ArgumentId>* binding_of(const std::string& var) const {
        for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
            if (it->first == var) return &it->second;
        }
        return nullptr;
    }

    void check_arg_in_binding(const std::string& var, const ArgumentId& arg, const Token& at) {
        const auto* binding = binding_of(var);
        if (binding && !binding->count(arg))
            throw ParseError("argument '" + arg + "' is outside the binding set of '" + var + "'",
                             at.line, at.col);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const Schema& schema_;
    std::vector<std::pair<std::string, std::set<ArgumentId>>> bindings_;
};

std::string print_argset(const std::set<ArgumentId>& argset) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& a : argset) {
        if (!first) out << ", ";
        out << a;
        first = false;
    }
    out << "}";
    return out.str();
}

std::string print_label(const Label& l) { return "\"" + l + "\""; }

// Precedence levels: or < and < not < primary.
constexpr int kPrecOr = 1, kPrecAnd = 2, kPrecNot = 3, kPrecPrimary = 4;

std::string print_formula(const FormulaPtr& f, int parent_prec);

std::string print_atom(const AtomicFormula& atom) {
    std::ostringstream out;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, VarArgEqVarArg>) {
                out << a.var1 << "." << a.arg1 << " == " << a.var2 << "." << a.arg2;
            } else if constexpr (std::is_same_v<T, VarArgEqLabel>) {
                out << a.var << "." << a.arg << " == " << print_label(a.label);
            } else if constexpr (std::is_same_v<T, TableMembership>) {
                out << a.table << "(" << a.var << ")";
            } else if constexpr (std::is_same_v<T, CountLeCount>) {
                out << "count(" << a.var1 << ", " << print_label(a.label1) << ") <= count("
                    << a.var2 << ", " << print_label(a.label2) << ")";
            } else if constexpr (std::is_same_v<T, CountLeNat>) {
                out << "count(" << a.var << ", " << print_label(a.label) << ") <= " << a.bound;
            } else if constexpr (std::is_same_v<T, NatLeCount>) {
                out << a.bound << " <= count(" << a.var << ", " << print_label(a.label) << ")";
            }
        },
        atom);
    return out.str();
}

std::string print_formula(const FormulaPtr& f, int parent_prec) {
    std::string text;
    int prec = kPrecPrimary;
    if (const auto* atom = std::get_if<AtomicFormula>(&f->node)) {
        text = print_atom(*atom);
    } else if (const auto* n = std::get_if<NotF>(&f->node)) {
        prec = kPrecNot;
        text = "not " + print_formula(n->inner, kPrecPrimary);
    } else if (const auto* n = std::get_if<AndF>(&f->node)) {
        prec = kPrecAnd;
        text = print_formula(n->lhs, kPrecAnd) + " and " + print_formula(n->rhs, kPrecAnd + 1);
    } else if (const auto* n = std::get_if<OrF>(&f->node)) {
        prec = kPrecOr;
        text = print_formula(n->lhs, kPrecOr) + " or " + print_formula(n->rhs, kPrecOr + 1);
    } else if (const auto* n = std::get_if<ExistsF>(&f->node)) {
        text = "exists " + n->var + " : " + print_argset(n->argset) + " [ " +
               print_formula(n->body, kPrecOr) + " ]";
    } else if (const auto* n = std::get_if<ForallF>(&f->node)) {
        text = "forall " + n->var + " : " + print_argset(n->argset) + " [ " +
               print_formula(n->body, kPrecOr) + " ]";
    }
    if (prec < parent_prec) return "(" + text + ")";
    return text;
}

}  // namespace

QueryExpr parse_query(const std::string& text, const Schema& schema) {
    return Parser(text, schema).parse_query_expr();
}

std::string pretty_print(const FormulaPtr& formula) { return print_formula(formula, kPrecOr); }

std::string pretty_print(const QueryExpr& query) {
    return "{ " + query.var + " : " + print_argset(query.argset) + " | " +
           pretty_print(query.formula) + " }";
}

namespace {

// Static analysis walk. Binding sites get stable ids so shadowed names stay
// distinct; guard sets are computed per polarity.
class Analyzer {
public:
    Analyzer(const Schema& schema, WellformednessReport& report)
        : schema_(schema), report_(report) {}

    void run(const QueryExpr& query) {
        int binder = push_binding(query.var, query.argset);
        report_.bindings.push_back({query.var, query.argset});
        visit(query.formula);
        auto positive = rr_positive(query.formula);
        if (!positive.count(binder)) flag_unguarded(query.var);
        pop_binding();
    }

    bool guards_ok() const { return guards_ok_; }

private:
    struct Binding {
        std::string name;
        int id;
        std::set<ArgumentId> argset;
    };

    int push_binding(const std::string& name, const std::set<ArgumentId>& argset) {
        int id = next_id_++;
        env_.push_back({name, id, argset});
        return id;
    }
    void pop_binding() { env_.pop_back(); }

    const Binding* lookup(const std::string& name) const {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
            if (it->name == name) return &*it;
        }
        return nullptr;
    }

    void error(const std::string& message) { report_.errors.push_back(message); }
    void flag_unguarded(const std::string& name) {
        guards_ok_ = false;
        if (std::find(report_.unguarded.begin(), report_.unguarded.end(), name) ==
            report_.unguarded.end())
            report_.unguarded.push_back(name);
    }

    void check_var_arg(const std::string& var, const ArgumentId& arg) {
        const Binding* b = lookup(var);
        if (!b) {
            error("variable '" + var + "' is not bound");
            return;
        }
        if (!b->argset.count(arg))
            error("argument '" + arg + "' is outside the binding set of '" + var + "'");
    }

    void check_label(const Label& l) {
        if (!schema_.labels().contains(l)) error("unknown label '" + l + "'");
    }

    void visit_atom(const AtomicFormula& atom) {
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, VarArgEqVarArg>) {
                    check_var_arg(a.var1, a.arg1);
                    check_var_arg(a.var2, a.arg2);
                } else if constexpr (std::is_same_v<T, VarArgEqLabel>) {
                    check_var_arg(a.var, a.arg);
                    check_label(a.label);
                } else if constexpr (std::is_same_v<T, TableMembership>) {
                    if (!schema_.has_table(a.table)) {
                        error("unknown table '" + a.table + "'");
                        return;
                    }
                    const Binding* b = lookup(a.var);
                    if (!b) {
                        error("variable '" + a.var + "' is not bound");
                        return;
                    }
                    const auto& header = schema_.header_of(a.table);
                    for (const auto& arg : b->argset) {
                        if (!header.count(arg)) {
                            error("binding set of '" + a.var + "' is not contained in header(" +
                                  a.table + ")");
                            break;
                        }
                    }
                } else if constexpr (std::is_same_v<T, CountLeCount>) {
                    if (!lookup(a.var1)) error("variable '" + a.var1 + "' is not bound");
                    if (!lookup(a.var2)) error("variable '" + a.var2 + "' is not bound");
                    check_label(a.label1);
                    check_label(a.label2);
                } else {
                    const auto& count_atom = a;
                    if (!lookup(count_atom.var))
                        error("variable '" + count_atom.var + "' is not bound");
                    check_label(count_atom.label);
                }
            },
            atom);
    }

    void visit(const FormulaPtr& f) {
        if (const auto* atom = std::get_if<AtomicFormula>(&f->node)) {
            visit_atom(*atom);
        } else if (const auto* n = std::get_if<NotF>(&f->node)) {
            visit(n->inner);
        } else if (const auto* n = std::get_if<AndF>(&f->node)) {
            visit(n->lhs);
            visit(n->rhs);
        } else if (const auto* n = std::get_if<OrF>(&f->node)) {
            visit(n->lhs);
            visit(n->rhs);
        } else if (const auto* n = std::get_if<ExistsF>(&f->node)) {
            int id = push_binding(n->var, n->argset);
            report_.bindings.push_back({n->var, n->argset});
            visit(n->body);
            if (!rr_positive(n->body).count(id)) flag_unguarded(n->var);
            pop_binding();
        } else if (const auto* n = std::get_if<ForallF>(&f->node)) {
            int id = push_binding(n->var, n->argset);
            report_.bindings.push_back({n->var, n->argset});
            visit(n->body);
            if (!rr_negative(n->body).count(id)) flag_unguarded(n->var);
            pop_binding();
        }
    }

    // Binding sites whose values are confined to guard-table projections
    // when the formula holds (rr_positive) or fails (rr_negative).
    std::set<int> rr_positive(const FormulaPtr& f) {
        if (const auto* atom = std::get_if<AtomicFormula>(&f->node)) {
            if (const auto* m = std::get_if<TableMembership>(atom)) {
                if (const Binding* b = lookup(m->var)) return {b->id};
            }
            return {};
        }
        if (const auto* n = std::get_if<NotF>(&f->node)) return rr_negative(n->inner);
        if (const auto* n = std::get_if<AndF>(&f->node)) {
            auto result = rr_positive(n->lhs);
            auto rhs = rr_positive(n->rhs);
            result.insert(rhs.begin(), rhs.end());
            return result;
        }
        if (const auto* n = std::get_if<OrF>(&f->node)) {
            auto lhs = rr_positive(n->lhs);
            auto rhs = rr_positive(n->rhs);
            std::set<int> result;
            std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                  std::inserter(result, result.begin()));
            return result;
        }
        if (const auto* n = std::get_if<ExistsF>(&f->node)) return quantified_rr(*n, true);
        if (const auto* n = std::get_if<ForallF>(&f->node)) return quantified_rr(*n, true);
        return {};
    }

    std::set<int> rr_negative(const FormulaPtr& f) {
        if (std::get_if<AtomicFormula>(&f->node)) return {};
        if (const auto* n = std::get_if<NotF>(&f->node)) return rr_positive(n->inner);
        if (const auto* n = std::get_if<AndF>(&f->node)) {
            auto lhs = rr_negative(n->lhs);
            auto rhs = rr_negative(n->rhs);
            std::set<int> result;
            std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                  std::inserter(result, result.begin()));
            return result;
        }
        if (const auto* n = std::get_if<OrF>(&f->node)) {
            auto result = rr_negative(n->lhs);
            auto rhs = rr_negative(n->rhs);
            result.insert(rhs.begin(), rhs.end());
            return result;
        }
        if (const auto* n = std::get_if<ExistsF>(&f->node)) return quantified_rr(*n, false);
        if (const auto* n = std::get_if<ForallF>(&f->node)) return quantified_rr(*n, false);
        return {};
    }

    // Quantifier domains are never empty, so an outer restriction derived
    // from the body survives under either quantifier and either polarity.
    template <typename Node>
    std::set<int> quantified_rr(const Node& n, bool positive) {
        int id = push_binding(n.var, n.argset);
        auto result = positive ? rr_positive(n.body) : rr_negative(n.body);
        pop_binding();
        result.erase(id);
        return result;
    }

    const Schema& schema_;
    WellformednessReport& report_;
    std::vector<Binding> env_;
    int next_id_ = 0;
    bool guards_ok_ = true;
};

}  // namespace

WellformednessReport check_wellformed(const QueryExpr& query, const Schema& schema) {
    WellformednessReport report;
    Analyzer analyzer(schema, report);
    analyzer.run(query);
    report.ok = report.errors.empty();
    report.range_restricted = report.ok && analyzer.guards_ok();
    return report;
}

}  // namespace arglab
