#include "mfts/csv_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "mfts/errors.hpp"

namespace mfts {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

// Column index to read values from, chosen by header name.
std::size_t pick_value_column(const std::vector<std::string>& header) {
    static const char* preferred[] = {"adj close", "adj_close", "adjclose", "close",
                                      "price",     "value",     "return",   "returns",
                                      "ret",       "log_return"};
    for (const char* want : preferred) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (lower(header[i]) == want) return i;
    }
    return header.size() > 1 ? 1 : 0;
}

bool header_names_price(const std::string& name) {
    const std::string n = lower(name);
    return n.find("close") != std::string::npos || n.find("price") != std::string::npos ||
           n.find("open") != std::string::npos;
}

bool header_names_return(const std::string& name) {
    const std::string n = lower(name);
    return n.find("ret") != std::string::npos || n.find("value") != std::string::npos;
}

} // namespace

LoadedSeries read_series_csv(const std::filesystem::path& path, InputKind hint) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());

    LoadedSeries loaded;
    Series& s = loaded.series;
    s.label = path.stem().string();

    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    std::vector<std::string> header;
    std::size_t value_col = 0;
    bool dated = false;
    bool layout_known = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_csv(t);

        if (!layout_known) {
            double tmp;
            const bool first_is_date = Date::looks_like(fields[0]);
            const bool first_is_number = parse_double(fields[0], tmp);
            if (!first_is_date && !first_is_number) {
                saw_header = true;
                header = fields;
                value_col = pick_value_column(fields);
                dated = fields.size() > 1;
                layout_known = true;
                continue;
            }
            dated = first_is_date;
            if (!dated && fields.size() > 1)
                throw InputError(path.string() + ":" + std::to_string(lineno) +
                                 ": multi-column data needs a date in column 1");
            value_col = dated ? 1 : 0;
            layout_known = true;
        }

        if (fields.size() <= value_col || (dated && fields.empty()))
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": short row");

        if (dated) {
            if (!Date::looks_like(fields[0]))
                throw InputError(path.string() + ":" + std::to_string(lineno) +
                                 ": expected an ISO date in column 1, got '" + fields[0] + "'");
            s.timestamps.push_back(Date::parse(fields[0]));
        }
        double v;
        if (!parse_double(fields[value_col], v) || !std::isfinite(v))
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": bad numeric value '" + fields[value_col] + "'");
        s.values.push_back(v);
    }
    if (s.values.size() < 2)
        throw InputError(path.string() + ": fewer than 2 data rows");
    s.validate();

    switch (hint) {
    case InputKind::price: loaded.is_price = true; break;
    case InputKind::value: loaded.is_price = false; break;
    case InputKind::auto_detect: {
        if (saw_header && value_col < header.size()) {
            const std::string& name = header[value_col];
            if (header_names_price(name))
                loaded.is_price = true;
            else if (header_names_return(name))
                loaded.is_price = false;
            else
                loaded.is_price = false;
        } else {
            loaded.is_price = false;
        }
        break;
    }
    }
    return loaded;
}

void write_series_csv(const std::filesystem::path& path, const Series& x,
                      const std::string& value_header) {
    CsvFile out(path);
    if (x.has_timestamps()) {
        out.raw_line("date," + value_header);
        for (std::size_t i = 0; i < x.values.size(); ++i)
            out.raw_line(x.timestamps[i].iso() + "," + fmt12(x.values[i]));
    } else {
        out.raw_line(value_header);
        for (double v : x.values) out.raw_line(fmt12(v));
    }
    out.close();
}

CsvFile::CsvFile(const std::filesystem::path& path) : out_(path), path_(path) {
    if (!out_) throw InputError("cannot write " + path.string());
}

CsvFile::~CsvFile() = default;

void CsvFile::cells(std::initializer_list<std::string> row) {
    std::string line;
    bool first = true;
    for (const auto& c : row) {
        if (!first) line += ',';
        line += c;
        first = false;
    }
    raw_line(line);
}

void CsvFile::raw_line(const std::string& line) {
    out_ << line << '\n';
    if (!out_) throw InputError("write failed on " + path_.string());
}

void CsvFile::close() {
    out_.close();
    if (out_.fail()) throw InputError("close failed on " + path_.string());
}

} // namespace mfts
