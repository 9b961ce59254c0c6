#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace vvrate {

// CSV emission with the repo-wide conventions: '.' decimal separator, ','
// delimiter, LF line endings, 17 significant digits for doubles.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& text);  // "# text" line
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void mixed_row(const std::vector<std::string>& cells);

    static std::string format(double x);

  private:
    std::ofstream out_;
};

}  // namespace vvrate
