#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arglab/catalog.hpp"
#include "arglab/eval.hpp"
#include "arglab/fixtures.hpp"
#include "arglab/semantics.hpp"
#include "arglab/sqlgen.hpp"
#include "arglab/table_io.hpp"

using namespace arglab;

namespace {

// Exit codes: 1 input parse/read errors, 2 flag misuse, 3 query static
// errors, 4 evaluation errors, 5 non-range-restricted query in export-sql.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUsage = 2;
constexpr int kExitQueryStatic = 3;
constexpr int kExitEval = 4;
constexpr int kExitNotRangeRestricted = 5;

struct GlobalOptions {
    std::string format = "json";
    std::string labels = "strong";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << content;
}

std::string render_table(const ArgLabellingTable& table, const std::string& name,
                         const std::string& format) {
    if (format == "json") return table_to_json(table, name);
    if (format == "csv") return table_to_csv(table);
    return table_to_text(table);
}

AfFormat af_format_for(const std::string& flag, const std::string& path) {
    if (flag == "tgf") return AfFormat::Tgf;
    if (flag == "apx") return AfFormat::Apx;
    return std::filesystem::path(path).extension() == ".tgf" ? AfFormat::Tgf : AfFormat::Apx;
}

ArgumentationFramework load_af(const std::string& path, const std::string& format_flag) {
    return parse_af(read_file(path), af_format_for(format_flag, path));
}

int run_solve(const GlobalOptions& global, const std::string& af_file,
              const std::string& af_format, const std::string& semantics,
              const std::string& table_name, const std::string& out) {
    SemanticsKind kind;
    Sense sense;
    try {
        kind = semantics_kind_from_name(semantics);
        sense = sense_from_name(global.labels);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        auto af = load_af(af_file, af_format);
        auto labellings = enumerate_semantics(af, kind, sense);
        auto table = make_table(af.arguments(), std::move(labellings));
        std::string name = table_name.empty() ? semantics : table_name;
        write_output(render_table(table, name, global.format), out);
        std::cerr << table.row_count() << " rows\n";
        return kExitOk;
    } catch (const ParseError& e) {
        std::cerr << "error: line " << e.line << ": " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

int static_check(const QueryExpr& query, const Database& db) {
    auto report = check_wellformed(query, db.schema());
    if (!report.ok) {
        for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
        return kExitQueryStatic;
    }
    return kExitOk;
}

int run_query(const GlobalOptions& global, const std::string& manifest,
              const std::string& query_text, const std::string& query_file,
              const std::string& engine, const std::string& out) {
    Database db;
    std::string text = query_text;
    try {
        db = load_manifest(manifest);
        if (!query_file.empty()) text = read_file(query_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    QueryExpr query;
    try {
        query = parse_query(text, db.schema());
    } catch (const ParseError& e) {
        std::cerr << "error: line " << e.line << ", column " << e.column << ": " << e.what()
                  << "\n";
        return kExitQueryStatic;
    }
    if (int rc = static_check(query, db); rc != kExitOk) return rc;
    if (engine == "guarded" && !check_wellformed(query, db.schema()).range_restricted) {
        std::cerr << "error: query is not range-restricted; use --engine naive\n";
        return kExitQueryStatic;
    }
    try {
        auto table = engine == "guarded" ? evaluate_guarded(query, db) : evaluate(query, db);
        write_output(render_table(table, "result", global.format), out);
        std::cerr << table.row_count() << " rows\n";
        return kExitOk;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEval;
    }
}

struct DeriveOptions {
    std::string kind;
    std::string manifest;
    std::string table;
    std::string cols;
    std::vector<std::string> constraints;
    std::string fragment_table;
    std::string parts;
    std::string membership;
    std::string af_file;
    std::string af_format;
    std::string target;
    std::string out;
    bool emit_query = false;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

int run_derive(const GlobalOptions& global, const DeriveOptions& opt) {
    const bool needs_manifest = opt.kind != "explanation";
    if (needs_manifest && opt.manifest.empty()) {
        std::cerr << "error: derive " << opt.kind << " needs a manifest\n";
        return kExitUsage;
    }

    // explanation works from the framework directly: admissible labellings,
    // projected to the attacker closure of the target, then filtered on the
    // target being in
    if (opt.kind == "explanation") {
        if (opt.af_file.empty() || opt.target.empty()) {
            std::cerr << "error: derive explanation needs --af and --target\n";
            return kExitUsage;
        }
        try {
            auto af = load_af(opt.af_file, opt.af_format);
            if (!af.has_argument(opt.target)) {
                std::cerr << "error: unknown argument '" << opt.target << "'\n";
                return kExitUsage;
            }
            auto admissible = make_table(af.arguments(), enumerate_admissible(af));
            auto db = make_database(LabelAlphabet(), {{"admissible", admissible}});
            auto closure = relevance_set(af, opt.target);
            auto partial = build_partial_query("admissible", closure);
            auto projected = evaluate_guarded(partial, db);
            auto db2 = make_database(LabelAlphabet(), {{"closure", projected}});
            auto dependent = build_dependent_query("closure", closure, {{opt.target, kIn}});
            if (opt.emit_query) {
                std::cerr << pretty_print(partial) << "\n";
                std::cerr << pretty_print(dependent) << "\n";
            }
            auto result = evaluate_guarded(dependent, db2);
            write_output(render_table(result, "explanation", global.format), opt.out);
            std::cerr << result.row_count() << " rows\n";
            return kExitOk;
        } catch (const ParseError& e) {
            std::cerr << "error: line " << e.line << ": " << e.what() << "\n";
            return kExitInput;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInput;
        }
    }

    Database db;
    try {
        db = load_manifest(opt.manifest);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    QueryExpr query;
    try {
        if (opt.kind == "stable" || opt.kind == "preferred" || opt.kind == "grounded") {
            if (opt.table.empty()) {
                std::cerr << "error: derive " << opt.kind << " needs --table\n";
                return kExitUsage;
            }
            const auto& header = db.schema().header_of(opt.table);
            if (opt.kind == "stable") {
                query = build_stable_query(opt.table, header);
            } else if (opt.kind == "preferred") {
                Label undecided = global.labels == "weak" ? kLc : kUnd;
                query = build_preferred_query(opt.table, header, undecided);
            } else {
                query = build_grounded_query(opt.table, header);
            }
        } else if (opt.kind == "partial") {
            if (opt.table.empty() || opt.cols.empty()) {
                std::cerr << "error: derive partial needs --table and --cols\n";
                return kExitUsage;
            }
            auto cols = split_list(opt.cols);
            query = build_partial_query(opt.table,
                                        std::set<ArgumentId>(cols.begin(), cols.end()));
        } else if (opt.kind == "dependent") {
            if (opt.table.empty() || (opt.constraints.empty() && opt.fragment_table.empty())) {
                std::cerr << "error: derive dependent needs --table plus --set or "
                             "--fragment-table\n";
                return kExitUsage;
            }
            const auto& header = db.schema().header_of(opt.table);
            if (!opt.fragment_table.empty()) {
                query = build_dependent_query_from_table(
                    opt.table, header, opt.fragment_table,
                    db.schema().header_of(opt.fragment_table));
            } else {
                std::vector<std::pair<ArgumentId, Label>> constraints;
                for (const auto& c : opt.constraints) {
                    auto eq = c.find('=');
                    if (eq == std::string::npos) {
                        std::cerr << "error: --set expects arg=label, got '" << c << "'\n";
                        return kExitUsage;
                    }
                    constraints.push_back({c.substr(0, eq), c.substr(eq + 1)});
                }
                query = build_dependent_query(opt.table, header, constraints);
            }
        } else {  // multi-agent
            if (opt.parts.empty() || opt.membership.empty()) {
                std::cerr << "error: derive multi-agent needs --parts and --membership\n";
                return kExitUsage;
            }
            std::vector<std::pair<std::string, std::set<ArgumentId>>> parts;
            for (const auto& name : split_list(opt.parts))
                parts.push_back({name, db.schema().header_of(name)});
            query = build_join_query(parts, opt.membership,
                                     db.schema().header_of(opt.membership));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (opt.emit_query) std::cerr << pretty_print(query) << "\n";
    if (int rc = static_check(query, db); rc != kExitOk) return rc;
    try {
        auto result = evaluate_guarded(query, db);
        write_output(render_table(result, opt.kind, global.format), opt.out);
        std::cerr << result.row_count() << " rows\n";
        return kExitOk;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEval;
    }
}

int run_export_sql(const std::string& manifest, const std::string& query_text,
                   const std::string& query_file, const std::string& out,
                   const std::string& query_out) {
    Database db;
    std::string text = query_text;
    try {
        db = load_manifest(manifest);
        if (!query_file.empty()) text = read_file(query_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    std::string dump;
    try {
        dump = export_schema_sql(db);
    } catch (const SqlError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    std::string query_sql;
    if (!text.empty()) {
        QueryExpr query;
        try {
            query = parse_query(text, db.schema());
        } catch (const ParseError& e) {
            std::cerr << "error: line " << e.line << ", column " << e.column << ": "
                      << e.what() << "\n";
            return kExitQueryStatic;
        }
        try {
            query_sql = translate_query(query, db.schema());
        } catch (const SqlError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitNotRangeRestricted;
        }
    }
    try {
        write_output(dump, out);
        if (!query_sql.empty()) {
            if (query_out.empty() && !out.empty()) {
                std::cout << query_sql;
            } else if (query_out.empty()) {
                std::cout << "\n" << query_sql;
            } else {
                write_output(query_sql, query_out);
            }
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

int run_repl(const GlobalOptions& global, const std::string& manifest) {
    Database db;
    try {
        db = load_manifest(manifest);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const bool interactive = isatty(fileno(stdin));
    std::string line;
    while (true) {
        if (interactive) std::cerr << "arglab> ";
        if (!std::getline(std::cin, line)) break;
        if (line.empty()) continue;
        if (line == "\\quit" || line == "\\q") break;
        if (line == "\\tables") {
            for (const auto& name : db.schema().table_names()) std::cout << name << "\n";
            continue;
        }
        try {
            auto query = parse_query(line, db.schema());
            auto report = check_wellformed(query, db.schema());
            if (!report.ok) {
                for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
                continue;
            }
            auto table = report.range_restricted ? evaluate_guarded(query, db)
                                                 : evaluate(query, db);
            if (global.format == "json") {
                std::cout << table_to_text(table);
            } else {
                std::cout << render_table(table, "result", global.format);
            }
            std::cerr << "(" << table.row_count() << " rows)\n";
        } catch (const ParseError& e) {
            std::cerr << "error: line " << e.line << ", column " << e.column << ": "
                      << e.what() << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"argumentation labelling tables and queries"};
    app.require_subcommand(1);
    // let --format/--labels appear after the subcommand as well
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--labels", global.labels, "label sense")
        ->check(CLI::IsMember({"strong", "weak"}))
        ->capture_default_str();

    auto* solve = app.add_subcommand("solve", "compute a semantics table from a framework");
    solve->fallthrough();
    std::string solve_af, solve_af_format, solve_semantics, solve_name, solve_out;
    solve->add_option("af-file", solve_af, "framework file")->required();
    solve->add_option("--af-format", solve_af_format, "framework format")
        ->check(CLI::IsMember({"apx", "tgf"}));
    solve->add_option("--semantics", solve_semantics, "semantics to enumerate")
        ->required()
        ->check(CLI::IsMember({"admissible", "complete", "preferred", "grounded", "stable"}));
    solve->add_option("--name", solve_name, "table name for serialization");
    solve->add_option("-o,--out", solve_out, "output file (default stdout)");

    auto* query = app.add_subcommand("query", "evaluate a query against a database");
    query->fallthrough();
    std::string query_manifest, query_text, query_file, query_engine = "naive", query_out;
    query->add_option("manifest", query_manifest, "database manifest")->required();
    query->add_option("--query", query_text, "query text");
    query->add_option("--query-file", query_file, "file holding one query");
    query->add_option("--engine", query_engine, "evaluation engine")
        ->check(CLI::IsMember({"naive", "guarded"}))
        ->capture_default_str();
    query->add_option("-o,--out", query_out, "output file (default stdout)");

    auto* derive = app.add_subcommand("derive", "build and evaluate a known query shape");
    derive->fallthrough();
    DeriveOptions derive_opt;
    derive->add_option("kind", derive_opt.kind, "what to derive")
        ->required()
        ->check(CLI::IsMember({"stable", "preferred", "grounded", "partial", "dependent",
                               "explanation", "multi-agent"}));
    derive->add_option("manifest", derive_opt.manifest, "database manifest");
    derive->add_option("--table", derive_opt.table, "source table");
    derive->add_option("--cols", derive_opt.cols, "comma-separated columns (partial)");
    derive->add_option("--set", derive_opt.constraints,
                       "arg=label constraint (dependent, repeatable)");
    derive->add_option("--fragment-table", derive_opt.fragment_table,
                       "fragment table (dependent)");
    derive->add_option("--parts", derive_opt.parts, "comma-separated part tables");
    derive->add_option("--membership", derive_opt.membership, "membership table");
    derive->add_option("--af", derive_opt.af_file, "framework file (explanation)");
    derive->add_option("--af-format", derive_opt.af_format, "framework format")
        ->check(CLI::IsMember({"apx", "tgf"}));
    derive->add_option("--target", derive_opt.target, "argument to explain");
    derive->add_option("-o,--out", derive_opt.out, "output file (default stdout)");
    derive->add_flag("--emit-query", derive_opt.emit_query,
                     "print the generated query to the diagnostics stream");

    auto* export_sql = app.add_subcommand("export-sql", "emit SQL DDL, rows and queries");
    export_sql->fallthrough();
    std::string export_manifest, export_query, export_query_file, export_out,
        export_query_out;
    export_sql->add_option("manifest", export_manifest, "database manifest")->required();
    export_sql->add_option("--query", export_query, "query to translate");
    export_sql->add_option("--query-file", export_query_file, "file holding one query");
    export_sql->add_option("-o,--out", export_out, "dump file (default stdout)");
    export_sql->add_option("--query-out", export_query_out, "translated query file");

    auto* repl = app.add_subcommand("repl", "interactive query loop");
    repl->fallthrough();
    std::string repl_manifest;
    repl->add_option("manifest", repl_manifest, "database manifest")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return kExitUsage;
    }

    if (solve->parsed())
        return run_solve(global, solve_af, solve_af_format, solve_semantics, solve_name,
                         solve_out);
    if (query->parsed()) {
        if (query_text.empty() == query_file.empty()) {
            std::cerr << "error: pass exactly one of --query or --query-file\n";
            return kExitUsage;
        }
        return run_query(global, query_manifest, query_text, query_file, query_engine,
                         query_out);
    }
    if (derive->parsed()) return run_derive(global, derive_opt);
    if (export_sql->parsed())
        return run_export_sql(export_manifest, export_query, export_query_file, export_out,
                              export_query_out);
    if (repl->parsed()) return run_repl(global, repl_manifest);
    return kExitUsage;
}
