#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace fpsearch {

struct LambdaGrid {
  double min = 1e-3;
  double max = 1.0;
  int points = 200;
  bool log_spacing = true;

  std::vector<double> values() const;  // ascending, inclusive of both ends
};

struct SweepSpec {
  double delta_sq = 0.1;
  std::vector<int> l_values;
  LambdaGrid grid;
  bool ref_closed = true;
  bool ref_grover = false;
  bool ref_pi3 = false;
  std::vector<int> pi3_ks = {2};
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // deterministic, ascending lambda
};

// evaluates every curve of the spec on the lambda grid; rows are independent
// and computed in parallel, output order is fixed by the grid
SweepTable run_sweep(const SweepSpec& spec);

// shortest representation that round-trips a double (%.17g)
std::string format_float(double v);

// RFC-4180: header row, comma separated, CRLF line endings
void write_csv(const SweepTable& table, std::ostream& out);

nlohmann::json table_to_json(const SweepTable& table);

// sidecar metadata describing how the table was produced (no timestamps, so
// identical flags give byte-identical outputs)
nlohmann::json sweep_meta(const SweepSpec& spec, const SweepTable& table);

}  // namespace fpsearch
