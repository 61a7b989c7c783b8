#include <fstream>
#include <ostream>
#include <stdexcept>

#include "duelbench/harness.hpp"

namespace duelbench {

void write_csv(std::ostream& out, const RunRecord& record) {
    out << kCsvHeader << '\n';
    for (const auto& s : record.summaries) {
        out << s.t << ',' << record.policy << ',' << to_string(s.kind) << ',' << format_decimal(s.mean) << ','
            << format_decimal(s.stddev) << ',' << s.replications << ',' << record.dataset << ',' << record.seed
            << '\n';
    }
}

void emit_csv(const RunRecord& record, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_csv(out, record);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed while writing '" + path + "'");
    }
}

}  // namespace duelbench
