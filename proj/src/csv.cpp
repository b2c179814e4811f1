#include "bellqst/csv.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bellqst/polarimetry.hpp"

namespace bellqst {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_per_state_csv(std::ostream& out, const std::vector<RunResult>& results) {
    out << "scenario_id,sigma,state_index,phase,fidelity,concurrence,converged\n";
    for (const RunResult& r : results)
        for (const StateResult& s : r.per_state) {
            out << r.scenario_id << ',' << format_real(s.sigma) << ',' << s.state_index << ','
                << format_real(s.phase) << ',' << format_real(s.fidelity) << ','
                << format_real(s.concurrence) << ',' << (s.converged ? 1 : 0) << '\n';
        }
}

void write_per_sigma_csv(std::ostream& out, const std::vector<RunResult>& results) {
    out << "scenario_id,sigma,f_mean,f_std,c_mean,c_std,n_nonconverged\n";
    for (const RunResult& r : results)
        for (const SigmaAggregate& a : r.per_sigma) {
            out << r.scenario_id << ',' << format_real(a.sigma) << ','
                << format_real(a.fidelity_stats.mean) << ','
                << format_real(a.fidelity_stats.std_dev) << ','
                << format_real(a.concurrence_stats.mean) << ','
                << format_real(a.concurrence_stats.std_dev) << ',' << a.n_nonconverged << '\n';
        }
}

void write_scan_csv(std::ostream& out, const std::vector<ScanPoint>& points) {
    out << "theta,mean_count,std_count,theory_count\n";
    for (const ScanPoint& p : points) {
        out << format_real(p.theta) << ',' << format_real(p.mean_count) << ','
            << format_real(p.std_count) << ',' << format_real(p.theory_count) << '\n';
    }
}

void write_comparison_csv(std::ostream& out, const ComparisonTable& table) {
    out << "sigma";
    for (const std::string& id : table.scenario_ids) {
        out << ',' << id << ":f_mean," << id << ":f_std," << id << ":c_mean," << id << ":c_std";
    }
    out << '\n';
    for (std::size_t i = 0; i < table.sigma_grid.size(); ++i) {
        out << format_real(table.sigma_grid[i]);
        for (const auto& column : table.columns) {
            const SigmaAggregate& a = column[i];
            out << ',' << format_real(a.fidelity_stats.mean) << ','
                << format_real(a.fidelity_stats.std_dev) << ','
                << format_real(a.concurrence_stats.mean) << ','
                << format_real(a.concurrence_stats.std_dev);
        }
        out << '\n';
    }
}

void write_counts_csv(std::ostream& out, const std::vector<CountsRow>& rows) {
    const MeasurementSet mset = build_measurement_set();
    out << "scenario_id,state_index";
    for (const std::string& label : mset.labels) out << ',' << label;
    out << '\n';
    for (const CountsRow& row : rows) {
        out << row.scenario_id << ',' << row.state_index;
        for (double c : row.counts) out << ',' << format_real(c);
        out << '\n';
    }
}

std::vector<CountsRow> read_counts_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("counts csv: missing header");
    const std::vector<std::string> header = split_row(line);

    int id_col = -1, index_col = -1;
    std::array<int, kNumMeasurements> column_of;
    column_of.fill(-1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string& h = header[c];
        if (h == "scenario_id") {
            id_col = static_cast<int>(c);
        } else if (h == "state_index") {
            index_col = static_cast<int>(c);
        } else {
            int k = -1;
            try {
                k = measurement_index(h);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("counts csv: unknown column '" + h + "'");
            }
            if (column_of[k] != -1) {
                throw std::invalid_argument("counts csv: duplicate column '" + h + "'");
            }
            column_of[k] = static_cast<int>(c);
        }
    }
    for (int k = 0; k < kNumMeasurements; ++k) {
        if (column_of[k] == -1) throw std::invalid_argument("counts csv: missing count column");
    }

    std::vector<CountsRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::vector<std::string> cells = split_row(line);
        if (cells.size() != header.size()) {
            throw std::invalid_argument("counts csv: line " + std::to_string(line_no) +
                                        " has the wrong number of fields");
        }
        CountsRow row;
        row.scenario_id = id_col >= 0 ? cells[static_cast<std::size_t>(id_col)] : "";
        row.state_index = static_cast<int>(rows.size());
        try {
            if (index_col >= 0) row.state_index = std::stoi(cells[static_cast<std::size_t>(index_col)]);
            for (int k = 0; k < kNumMeasurements; ++k) {
                std::size_t used = 0;
                const std::string& cell = cells[static_cast<std::size_t>(column_of[k])];
                row.counts[k] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("counts csv: line " + std::to_string(line_no) +
                                        " has a malformed number");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("counts csv: no data rows");
    return rows;
}

void write_density_matrix(std::ostream& out, const CMat& rho, double objective) {
    out << "# objective=" << format_real(objective) << '\n';
    for (int r = 0; r < rho.dim(); ++r) {
        for (int c = 0; c < rho.dim(); ++c) {
            const Complex z = rho(r, c);
            if (c > 0) out << ' ';
            out << format_real(z.real()) << (std::signbit(z.imag()) ? '-' : '+')
                << format_real(std::abs(z.imag())) << 'i';
        }
        out << '\n';
    }
}

}  // namespace bellqst
