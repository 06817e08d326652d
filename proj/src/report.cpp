#include "axbmellin/report.hpp"

#include <cstdio>
#include <sstream>

namespace axb {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "suite,case,quantity,value,bound,ratio,margin,pass\n";
    for (const auto& r : rows) {
        os << r.suite << ',' << r.case_id << ',' << r.quantity << ','
           << format_double(r.value) << ',' << format_double(r.bound) << ','
           << format_double(r.ratio) << ',' << format_double(r.margin) << ','
           << (r.pass ? "1" : "0") << '\n';
    }
    return os.str();
}

static std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string rows_to_json(
    const std::vector<ReportRow>& rows,
    const std::vector<std::pair<std::string, std::string>>& metadata) {
    std::ostringstream os;
    os << "{\n  \"metadata\": {";
    bool first = true;
    for (const auto& [k, v] : metadata) {
        os << (first ? "\n" : ",\n") << "    \"" << json_escape(k) << "\": \""
           << json_escape(v) << "\"";
        first = false;
    }
    os << "\n  },\n  \"rows\": [";
    first = true;
    for (const auto& r : rows) {
        os << (first ? "\n" : ",\n") << "    {\"suite\": \"" << json_escape(r.suite)
           << "\", \"case\": \"" << json_escape(r.case_id) << "\", \"quantity\": \""
           << json_escape(r.quantity) << "\", \"value\": " << format_double(r.value)
           << ", \"bound\": " << format_double(r.bound)
           << ", \"ratio\": " << format_double(r.ratio)
           << ", \"margin\": " << format_double(r.margin)
           << ", \"pass\": " << (r.pass ? "true" : "false") << "}";
        first = false;
    }
    os << "\n  ]\n}\n";
    return os.str();
}

} // namespace axb
