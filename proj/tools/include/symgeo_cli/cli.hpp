#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "symgeo/geography.hpp"

namespace symgeo::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kUsageError = 2 };

// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Building blocks shared with the tests.
std::string tables_csv(const std::string& which);
std::string describe(const ManifoldDescriptor& m, bool with_checks);

struct ScanRow {
    std::string constructor;
    std::string params;  // "n=3;d=3"
    ManifoldDescriptor descriptor;
};

struct RangeSpec {
    std::string var;
    Int lo = 0, hi = 0;
};

std::vector<RangeSpec> parse_ranges(const std::string& text);
std::vector<ScanRow> scan(const std::string& regime, const std::vector<RangeSpec>& ranges);
std::string scan_csv_header();
std::string scan_csv_row(const ScanRow& row);

}  // namespace symgeo::cli
