#include "gvi/csv.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace gvi {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_key(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), width_(header.size()) {
    if (!out_) throw io_error("cannot open for writing: " + path);
    line(header);
}

void CsvWriter::line(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_.put(',');
        out_ << cells[i];
    }
    out_.put('\n');
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw io_error("row width mismatch writing " + path_);
    line(cells);
    if (!out_) throw io_error("write failure: " + path_);
}

void CsvWriter::close() {
    if (!out_.is_open()) return;
    out_.flush();
    bool ok = static_cast<bool>(out_);
    out_.close();
    if (!ok) throw io_error("write failure: " + path_);
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
        // destructor swallows; call close() to observe failures
    }
}

CsvFile read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    CsvFile file;
    std::string lineStr;
    bool first = true;
    while (std::getline(in, lineStr)) {
        if (!lineStr.empty() && lineStr.back() == '\r') lineStr.pop_back();
        if (lineStr.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(lineStr);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (lineStr.back() == ',') cells.emplace_back();
        if (first) {
            file.header = std::move(cells);
            first = false;
        } else {
            file.rows.push_back(std::move(cells));
        }
    }
    if (first) throw io_error("empty CSV: " + path);
    return file;
}

double parse_double(const std::string& cell) {
    if (cell == "inf") return std::numeric_limits<double>::infinity();
    if (cell == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw invalid_input("trailing characters in number: " + cell);
        return v;
    } catch (const std::logic_error&) {
        throw invalid_input("not a number: " + cell);
    }
}

long parse_long(const std::string& cell) {
    try {
        size_t pos = 0;
        long v = std::stol(cell, &pos);
        if (pos != cell.size()) throw invalid_input("trailing characters in integer: " + cell);
        return v;
    } catch (const std::logic_error&) {
        throw invalid_input("not an integer: " + cell);
    }
}

void write_qtable_csv(const std::string& path, const QTable& q) {
    CsvWriter w(path, {"state", "action", "value"});
    for (int s = 0; s < q.n_states; ++s)
        for (int a = 0; a < q.n_actions; ++a)
            w.row({std::to_string(s), std::to_string(a), fmt_full(q(s, a))});
    w.close();
}

QTable read_qtable_csv(const std::string& path) {
    CsvFile file = read_csv(path);
    if (file.header != std::vector<std::string>{"state", "action", "value"})
        throw invalid_input("expected header state,action,value in " + path);
    int max_s = -1, max_a = -1;
    for (const auto& r : file.rows) {
        if (r.size() != 3) throw invalid_input("malformed row in " + path);
        max_s = std::max(max_s, static_cast<int>(parse_long(r[0])));
        max_a = std::max(max_a, static_cast<int>(parse_long(r[1])));
    }
    if (max_s < 0 || max_a < 0) throw invalid_input("no data rows in " + path);
    QTable q(max_s + 1, max_a + 1);
    std::vector<bool> seen(q.data.size(), false);
    for (const auto& r : file.rows) {
        long s = parse_long(r[0]), a = parse_long(r[1]);
        if (s < 0 || a < 0) throw invalid_input("negative index in " + path);
        size_t i = static_cast<size_t>(s) * q.n_actions + static_cast<size_t>(a);
        if (seen[i]) throw invalid_input("duplicate (state,action) in " + path);
        seen[i] = true;
        q.data[i] = parse_double(r[2]);
    }
    for (bool b : seen)
        if (!b) throw invalid_input("missing (state,action) entries in " + path);
    return q;
}

void write_error_csv(const std::string& path, const std::vector<QTable>& errors) {
    CsvWriter w(path, {"k", "state", "action", "value"});
    for (size_t k = 0; k < errors.size(); ++k) {
        const QTable& e = errors[k];
        for (int s = 0; s < e.n_states; ++s)
            for (int a = 0; a < e.n_actions; ++a)
                w.row({std::to_string(k), std::to_string(s), std::to_string(a),
                       fmt_full(e(s, a))});
    }
    w.close();
}

std::vector<QTable> read_error_csv(const std::string& path) {
    CsvFile file = read_csv(path);
    if (file.header != std::vector<std::string>{"k", "state", "action", "value"})
        throw invalid_input("expected header k,state,action,value in " + path);
    long max_k = -1;
    int max_s = -1, max_a = -1;
    for (const auto& r : file.rows) {
        if (r.size() != 4) throw invalid_input("malformed row in " + path);
        max_k = std::max(max_k, parse_long(r[0]));
        max_s = std::max(max_s, static_cast<int>(parse_long(r[1])));
        max_a = std::max(max_a, static_cast<int>(parse_long(r[2])));
    }
    if (max_k < 0) throw invalid_input("no data rows in " + path);
    std::vector<QTable> errors(static_cast<size_t>(max_k) + 1, QTable(max_s + 1, max_a + 1));
    std::vector<std::vector<bool>> seen(errors.size(),
                                        std::vector<bool>(errors[0].data.size(), false));
    for (const auto& r : file.rows) {
        long k = parse_long(r[0]);
        long s = parse_long(r[1]), a = parse_long(r[2]);
        if (k < 0 || s < 0 || a < 0) throw invalid_input("negative index in " + path);
        size_t i = static_cast<size_t>(s) * (max_a + 1) + static_cast<size_t>(a);
        if (seen[k][i]) throw invalid_input("duplicate (k,state,action) in " + path);
        seen[k][i] = true;
        errors[k].data[i] = parse_double(r[3]);
    }
    for (const auto& table_seen : seen)
        for (bool b : table_seen)
            if (!b) throw invalid_input("missing entries for some k in " + path);
    return errors;
}

}  // namespace gvi
