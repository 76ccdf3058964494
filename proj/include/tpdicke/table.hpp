// table.hpp — column-ordered result tables with reproducible CSV/JSON writers.
//
// CSV: '#'-prefixed metadata preamble (tool, spec echo, seed, created), header
// row, floats at 17 significant digits, NaN spelled "nan". JSON: object with
// "meta" and "rows" (array of row objects). The created timestamp honors
// SOURCE_DATE_EPOCH so identical runs produce identical bytes.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tpdicke {

struct Metadata {
    std::string tool{"tpdicke"};
    std::string version;
    std::string spec_echo;  // canonical JSON of the producing spec
    std::uint64_t seed{0};
    std::string created;  // ISO-8601 UTC

    static std::string timestamp();  // SOURCE_DATE_EPOCH if set, else now
};

class Table {
public:
    struct Column {
        std::string name;
        bool numeric{true};
        std::vector<double> num;
        std::vector<std::string> text;
    };

    explicit Table(Metadata meta = {}) : meta_(std::move(meta)) {}

    int add_numeric_column(const std::string& name);
    int add_text_column(const std::string& name);

    void resize_rows(std::size_t n);
    std::size_t rows() const { return n_rows_; }
    std::size_t cols() const { return columns_.size(); }

    void set(std::size_t row, int col, double value);
    void set(std::size_t row, int col, const std::string& value);

    const Column& column(int idx) const { return columns_.at(idx); }
    int column_index(const std::string& name) const;  // -1 if absent
    double value(std::size_t row, int col) const;

    const Metadata& meta() const { return meta_; }
    Metadata& meta() { return meta_; }

    std::string csv_string() const;
    std::string json_string() const;

    // Atomic: write to a temp file in the target directory, then rename.
    void write_csv(const std::string& path) const;
    void write_json(const std::string& path) const;

private:
    Metadata meta_;
    std::vector<Column> columns_;
    std::size_t n_rows_{0};
};

// "%.17g" with nan/inf spelled out; shared by every writer.
std::string format_double(double v);

void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace tpdicke
