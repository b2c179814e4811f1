#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "bellqst/harness.hpp"
#include "bellqst/noise.hpp"

namespace bellqst {

/// printf "%.12g"; non-finite values render as nan, inf, -inf.
std::string format_real(double v);

void write_per_state_csv(std::ostream& out, const std::vector<RunResult>& results);
void write_per_sigma_csv(std::ostream& out, const std::vector<RunResult>& results);
void write_scan_csv(std::ostream& out, const std::vector<ScanPoint>& points);
/// One row per sigma; columns f_mean/c_mean/c_std per scenario, prefixed by the scenario id.
void write_comparison_csv(std::ostream& out, const ComparisonTable& table);

struct CountsRow {
    std::string scenario_id;
    int state_index = 0;
    Counts counts{};
};

/// Columns: scenario_id, state_index, then the 36 labels HH..RR in measurement order.
void write_counts_csv(std::ostream& out, const std::vector<CountsRow>& rows);
/// Reads the layout above; count columns are matched by label so their order is free.
std::vector<CountsRow> read_counts_csv(std::istream& in);

/// "# objective=<value>" followed by four rows of four "a+bi" entries.
void write_density_matrix(std::ostream& out, const CMat& rho, double objective);

}  // namespace bellqst
