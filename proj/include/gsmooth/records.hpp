#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gsmooth/optimizer.hpp"

namespace gsmooth {

inline constexpr std::string_view kCsvHeader =
    "command,algo,estimator,L,N,d,c,lr,seed,round,metric,value";

/// One long-format row. Doubles are written in shortest round-trip form so
/// parse_csv_row(format_csv_row(r)) == r, NaN included.
struct CsvRow {
  std::string command;
  std::string algo;
  std::string estimator;
  std::size_t L = 0;
  std::size_t N = 0;
  std::size_t d = 0;
  double c = 0.0;
  double lr = 0.0;
  std::uint64_t seed = 0;
  std::size_t round = 0;
  std::string metric;
  double value = 0.0;

  bool operator==(const CsvRow& other) const;
};

std::string format_double(double v);
double parse_double(std::string_view s);

std::string format_csv_row(const CsvRow& row);
CsvRow parse_csv_row(std::string_view line);

/// Rows for one run: test_loss and grad_mse per round for linear regression,
/// objective per round for DFO.
std::vector<CsvRow> record_rows(const std::string& command, const RunConfig& config,
                                const RunRecord& record);

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace gsmooth
