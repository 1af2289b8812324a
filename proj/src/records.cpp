#include "gsmooth/records.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "gsmooth/errors.hpp"

namespace gsmooth {
namespace {

template <typename T>
T parse_unsigned(std::string_view s, const char* field) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError(std::string("csv: bad ") + field + " '" + std::string(s) + "'");
  }
  return v;
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

bool CsvRow::operator==(const CsvRow& o) const {
  return command == o.command && algo == o.algo && estimator == o.estimator && L == o.L &&
         N == o.N && d == o.d && same_double(c, o.c) && same_double(lr, o.lr) && seed == o.seed &&
         round == o.round && metric == o.metric && same_double(value, o.value);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError("csv: bad number '" + std::string(s) + "'");
  }
  return v;
}

std::string format_csv_row(const CsvRow& r) {
  std::string out;
  out += r.command + ',' + r.algo + ',' + r.estimator + ',';
  out += std::to_string(r.L) + ',' + std::to_string(r.N) + ',' + std::to_string(r.d) + ',';
  out += format_double(r.c) + ',' + format_double(r.lr) + ',';
  out += std::to_string(r.seed) + ',' + std::to_string(r.round) + ',';
  out += r.metric + ',' + format_double(r.value);
  return out;
}

CsvRow parse_csv_row(std::string_view line) {
  std::vector<std::string_view> f;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    f.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (f.size() != 12) throw ParameterError("csv: expected 12 fields, got " + std::to_string(f.size()));
  CsvRow r;
  r.command = f[0];
  r.algo = f[1];
  r.estimator = f[2];
  r.L = parse_unsigned<std::size_t>(f[3], "L");
  r.N = parse_unsigned<std::size_t>(f[4], "N");
  r.d = parse_unsigned<std::size_t>(f[5], "d");
  r.c = parse_double(f[6]);
  r.lr = parse_double(f[7]);
  r.seed = parse_unsigned<std::uint64_t>(f[8], "seed");
  r.round = parse_unsigned<std::size_t>(f[9], "round");
  r.metric = f[10];
  r.value = parse_double(f[11]);
  return r;
}

std::vector<CsvRow> record_rows(const std::string& command, const RunConfig& config,
                                const RunRecord& record) {
  CsvRow base;
  base.command = command;
  base.algo = to_string(config.sampler);
  base.estimator = to_string(config.estimator.kind);
  base.L = config.estimator.L;
  base.N = config.estimator.N;
  base.d = dimension(config.problem);
  base.c = config.estimator.c;
  base.lr = config.learning_rate;
  base.seed = config.seed;
  const bool linreg = std::holds_alternative<LinRegSetup>(config.problem);

  std::vector<CsvRow> rows;
  for (const auto& m : record.rounds) {
    CsvRow r = base;
    r.round = m.round;
    r.metric = linreg ? "test_loss" : "objective";
    r.value = m.test_metric;
    rows.push_back(r);
    if (linreg) {
      r.metric = "grad_mse";
      r.value = m.grad_mse.value_or(std::numeric_limits<double>::quiet_NaN());
      rows.push_back(r);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << format_csv_row(r) << '\n';
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParameterError("csv: missing or wrong header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_csv_row(line));
  }
  return rows;
}

}  // namespace gsmooth
