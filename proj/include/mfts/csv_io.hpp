#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>

#include "mfts/series.hpp"

namespace mfts {

// 12 significant digits, the output precision used in every CSV.
std::string fmt12(double v);
// 17 significant digits, enough to round-trip a double (config echo).
std::string fmt17(double v);

enum class InputKind {
    auto_detect,  // decide from the header; headerless data is taken as-is
    price,        // log-returns are derived before analysis
    value,        // values enter the pipeline unchanged
};

struct LoadedSeries {
    Series series;
    bool is_price = false;
};

// Accepts `value`, `date,value`, or a multi-column file whose header names a
// recognizable value column (close/price/value/return). Dates are ISO-8601
// and must be strictly increasing; NaNs, gaps and malformed cells are
// rejected rather than skipped.
LoadedSeries read_series_csv(const std::filesystem::path& path, InputKind hint);

// `date,<name>` rows when timestamps are present, bare `<name>` otherwise.
void write_series_csv(const std::filesystem::path& path, const Series& x,
                      const std::string& value_header);

class CsvFile {
public:
    explicit CsvFile(const std::filesystem::path& path);
    ~CsvFile();

    void cells(std::initializer_list<std::string> row);
    void raw_line(const std::string& line);
    void close();

private:
    std::ofstream out_;
    std::filesystem::path path_;
};

} // namespace mfts
