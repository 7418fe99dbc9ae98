#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "gvi/types.hpp"

namespace gvi {

/// Full-precision rendering (%.17g): reading the text back recovers the
/// exact double, which the byte-identical reproducibility contract rests on.
std::string fmt_full(double v);

/// Short rendering for parameter keys in filenames and key columns (%.12g);
/// infinity renders as "inf".
std::string fmt_key(double v);

/// Comma-separated writer with a header row and LF line endings (binary
/// stream, so no platform translation). Throws io_error on failure.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void close();  // flush and verify; called by the destructor too

    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

  private:
    void line(const std::vector<std::string>& cells);
    std::ofstream out_;
    std::string path_;
    size_t width_;
};

struct CsvFile {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads a whole CSV (no quoting; cells never contain commas here).
CsvFile read_csv(const std::string& path);

double parse_double(const std::string& cell);
long parse_long(const std::string& cell);

/// Q-table round-trip in the `state,action,value` layout.
void write_qtable_csv(const std::string& path, const QTable& q);
QTable read_qtable_csv(const std::string& path);

/// Per-iteration error tables in the `k,state,action,value` layout; k must
/// cover 0..K without gaps, every table the full shape.
void write_error_csv(const std::string& path, const std::vector<QTable>& errors);
std::vector<QTable> read_error_csv(const std::string& path);

}  // namespace gvi
