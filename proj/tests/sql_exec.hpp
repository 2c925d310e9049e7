#pragma once

// Helper used by the SQL tests and the acceptance suite to run generated
// SQL against an in-memory engine when one is available at build time.

#include <set>
#include <string>
#include <vector>

#include "arglab/table.hpp"

#ifdef ARGLAB_HAVE_SQLITE
#include <sqlite3.h>
#endif

namespace testsupport {

inline bool sql_engine_available() {
#ifdef ARGLAB_HAVE_SQLITE
    return true;
#else
    return false;
#endif
}

#ifdef ARGLAB_HAVE_SQLITE

class SqlEngine {
public:
    SqlEngine() {
        if (sqlite3_open(":memory:", &db_) != SQLITE_OK)
            throw std::runtime_error("cannot open in-memory database");
    }
    ~SqlEngine() { sqlite3_close(db_); }
    SqlEngine(const SqlEngine&) = delete;
    SqlEngine& operator=(const SqlEngine&) = delete;

    void execute(const std::string& sql) {
        char* error = nullptr;
        if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &error) != SQLITE_OK) {
            std::string message = error ? error : "sql error";
            sqlite3_free(error);
            throw std::runtime_error(message);
        }
    }

    // Rows of a SELECT as string tuples, order-insensitive (sorted).
    std::vector<std::vector<std::string>> select(const std::string& sql) {
        std::vector<std::vector<std::string>> rows;
        sqlite3_stmt* stmt = nullptr;
        if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK)
            throw std::runtime_error(std::string("prepare failed: ") + sqlite3_errmsg(db_));
        while (sqlite3_step(stmt) == SQLITE_ROW) {
            std::vector<std::string> row;
            int cols = sqlite3_column_count(stmt);
            for (int i = 0; i < cols; ++i) {
                const unsigned char* text = sqlite3_column_text(stmt, i);
                row.push_back(text ? reinterpret_cast<const char*>(text) : "");
            }
            rows.push_back(std::move(row));
        }
        sqlite3_finalize(stmt);
        std::sort(rows.begin(), rows.end());
        return rows;
    }

private:
    sqlite3* db_ = nullptr;
};

#endif  // ARGLAB_HAVE_SQLITE

// A table body as sorted label tuples over the sorted header, for
// comparison with engine output.
inline std::vector<std::vector<std::string>> table_tuples(const arglab::ArgLabellingTable& t) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : t.body()) {
        std::vector<std::string> tuple;
        for (const auto& a : t.header()) tuple.push_back(row.at(a));
        rows.push_back(std::move(tuple));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace testsupport
