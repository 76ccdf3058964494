#include "tpdicke/table.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "tpdicke/version.hpp"

namespace tpdicke {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string Metadata::timestamp() {
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    } else {
        t = std::time(nullptr);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int Table::add_numeric_column(const std::string& name) {
    columns_.push_back({name, true, std::vector<double>(n_rows_, 0.0), {}});
    return static_cast<int>(columns_.size()) - 1;
}

int Table::add_text_column(const std::string& name) {
    columns_.push_back({name, false, {}, std::vector<std::string>(n_rows_)});
    return static_cast<int>(columns_.size()) - 1;
}

void Table::resize_rows(std::size_t n) {
    n_rows_ = n;
    for (auto& c : columns_) {
        if (c.numeric)
            c.num.resize(n, 0.0);
        else
            c.text.resize(n);
    }
}

void Table::set(std::size_t row, int col, double value) {
    auto& c = columns_.at(col);
    if (!c.numeric) throw std::logic_error("Table::set: text column " + c.name);
    c.num.at(row) = value;
}

void Table::set(std::size_t row, int col, const std::string& value) {
    auto& c = columns_.at(col);
    if (c.numeric) throw std::logic_error("Table::set: numeric column " + c.name);
    c.text.at(row) = value;
}

int Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name) return static_cast<int>(i);
    return -1;
}

double Table::value(std::size_t row, int col) const {
    const auto& c = columns_.at(col);
    if (!c.numeric) throw std::logic_error("Table::value: text column " + c.name);
    return c.num.at(row);
}

std::string Table::csv_string() const {
    std::string out;
    out.reserve(n_rows_ * columns_.size() * 16 + 256);
    out += "# tool: " + meta_.tool + " " + meta_.version + "\n";
    out += "# spec: " + (meta_.spec_echo.empty() ? "{}" : meta_.spec_echo) + "\n";
    out += "# seed: " + std::to_string(meta_.seed) + "\n";
    out += "# created: " + meta_.created + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i].name;
    }
    out += '\n';
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out += ',';
            const auto& c = columns_[i];
            out += c.numeric ? format_double(c.num[r]) : c.text[r];
        }
        out += '\n';
    }
    return out;
}

std::string Table::json_string() const {
    nlohmann::json meta;
    meta["tool"] = meta_.tool + " " + meta_.version;
    meta["spec"] = meta_.spec_echo.empty()
                       ? nlohmann::json::object()
                       : nlohmann::json::parse(meta_.spec_echo);
    meta["seed"] = meta_.seed;
    meta["created"] = meta_.created;

    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < n_rows_; ++r) {
        nlohmann::json row;
        for (const auto& c : columns_) {
            if (c.numeric)
                row[c.name] = c.num[r];
            else
                row[c.name] = c.text[r];
        }
        rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(rows);
    return doc.dump(1) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp.string());
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) throw std::runtime_error("short write: " + tmp.string());
    }
    fs::rename(tmp, target);
}

void Table::write_csv(const std::string& path) const {
    write_file_atomic(path, csv_string());
}

void Table::write_json(const std::string& path) const {
    write_file_atomic(path, json_string());
}

}  // namespace tpdicke
