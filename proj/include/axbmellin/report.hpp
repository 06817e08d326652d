#pragma once

#include <string>
#include <vector>

namespace axb {

// One verification row: quantity compared against a bound, with the margin
// the quadrature error analysis allows.  CSV schema:
//   suite,case,quantity,value,bound,ratio,margin,pass
struct ReportRow {
    std::string suite;
    std::string case_id;
    std::string quantity;
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    double margin = 0.0;
    bool pass = true;
};

// Fixed "%.12e" formatting so identical inputs give byte-identical files.
std::string format_double(double v);
std::string rows_to_csv(const std::vector<ReportRow>& rows);
// JSON mirror of the CSV plus a metadata object.
std::string rows_to_json(const std::vector<ReportRow>& rows,
                         const std::vector<std::pair<std::string, std::string>>& metadata);

} // namespace axb
