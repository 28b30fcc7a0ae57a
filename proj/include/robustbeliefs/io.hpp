#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "robustbeliefs/common.hpp"

namespace robustbeliefs {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Shortest decimal string that round-trips the double exactly.
inline std::string double_to_string(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Writes via a sibling temp file and renames into place.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open temp file for " + path.string());
        out << content;
        if (!out.good()) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw Error("rename failed for " + path.string() + ": " + ec.message());
}

/// Comma-separated, LF line endings, header mandatory, floats at full
/// round-trip precision. Empty cells stay empty (ragged tails).
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    class Row {
      public:
        explicit Row(std::size_t width) { cells_.reserve(width); }
        Row& add(double v) {
            cells_.push_back(double_to_string(v));
            return *this;
        }
        Row& add(int v) {
            cells_.push_back(std::to_string(v));
            return *this;
        }
        Row& add(long v) {
            cells_.push_back(std::to_string(v));
            return *this;
        }
        Row& add(const std::string& v) {
            cells_.push_back(v);
            return *this;
        }
        Row& add_empty() {
            cells_.emplace_back();
            return *this;
        }
        const std::vector<std::string>& cells() const { return cells_; }

      private:
        std::vector<std::string> cells_;
    };

    Row& new_row() {
        rows_.emplace_back(header_.size());
        return rows_.back();
    }

    std::string serialize() const {
        std::string out;
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (i) out += ',';
            out += header_[i];
        }
        out += '\n';
        for (const auto& row : rows_) {
            const auto& cells = row.cells();
            for (std::size_t i = 0; i < header_.size(); ++i) {
                if (i) out += ',';
                if (i < cells.size()) out += cells[i];
            }
            out += '\n';
        }
        return out;
    }

    json to_json() const {
        json rows = json::array();
        for (const auto& row : rows_) {
            json obj = json::object();
            const auto& cells = row.cells();
            for (std::size_t i = 0; i < header_.size() && i < cells.size(); ++i) {
                if (cells[i].empty()) continue;
                obj[header_[i]] = cells[i];
            }
            rows.push_back(obj);
        }
        return rows;
    }

  private:
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

/// Stamped result wrapper written by every CLI command.
inline json make_envelope(const json& config_echo, const json& results, const json& provenance) {
    json env;
    env["schema_version"] = kSchemaVersion;
    env["config_echo"] = config_echo;
    env["results"] = results;
    env["provenance"] = provenance;
    return env;
}

}  // namespace robustbeliefs
