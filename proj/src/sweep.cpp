#include "fpsearch/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fpsearch/model2d.hpp"
#include "fpsearch/schedule.hpp"

namespace fpsearch {

std::vector<double> LambdaGrid::values() const {
  if (points < 2) throw std::invalid_argument("lambda grid needs at least 2 points");
  if (!(min > 0.0) || !(max > min) || max > 1.0)
    throw std::invalid_argument("lambda grid requires 0 < min < max <= 1");
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    double t = static_cast<double>(i) / (points - 1);
    v[static_cast<std::size_t>(i)] =
        log_spacing ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                    : min + t * (max - min);
  }
  v.front() = min;
  v.back() = max;
  return v;
}

SweepTable run_sweep(const SweepSpec& spec) {
  if (spec.l_values.empty()) throw std::invalid_argument("sweep needs at least one l");
  const double delta = std::sqrt(spec.delta_sq);
  const std::vector<double> lambdas = spec.grid.values();

  struct Curve {
    std::string name;
    PhaseSchedule sched;   // for simulated curves
    int pi3_k = 0;         // for pi3 reference columns
    enum class Kind { sim, closed, grover, pi3 } kind = Kind::sim;
  };

  std::vector<Curve> curves;
  for (int l : spec.l_values) {
    Curve sim;
    sim.name = "fp_sim_l" + std::to_string(l);
    sim.sched = fixed_point_phases(l, delta);
    sim.kind = Curve::Kind::sim;
    curves.push_back(sim);
    if (spec.ref_closed) {
      Curve c;
      c.name = "fp_closed_l" + std::to_string(l);
      c.sched = sim.sched;
      c.kind = Curve::Kind::closed;
      curves.push_back(c);
    }
    if (spec.ref_grover) {
      Curve g;
      g.name = "grover_l" + std::to_string(l);
      g.sched = fixed_point_phases(l, 1.0);
      g.kind = Curve::Kind::grover;
      curves.push_back(g);
    }
  }
  if (spec.ref_pi3) {
    for (int k : spec.pi3_ks) {
      Curve p;
      p.name = "pi3_k" + std::to_string(k);
      p.pi3_k = k;
      p.kind = Curve::Kind::pi3;
      curves.push_back(p);
    }
  }

  SweepTable table;
  table.columns.push_back("lambda");
  for (const Curve& c : curves) table.columns.push_back(c.name);
  table.rows.assign(lambdas.size(), std::vector<double>(table.columns.size(), 0.0));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(lambdas.size()); ++i) {
    const double lambda = lambdas[static_cast<std::size_t>(i)];
    std::vector<double>& row = table.rows[static_cast<std::size_t>(i)];
    row[0] = lambda;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const Curve& cv = curves[c];
      double val = 0.0;
      switch (cv.kind) {
        case Curve::Kind::sim:
          val = apply_sequence(cv.sched, make_params(lambda, cv.sched.delta)).p_target();
          break;
        case Curve::Kind::closed:
          val = success_prob_closed(cv.sched.L, cv.sched.delta, lambda);
          break;
        case Curve::Kind::grover:
          val = grover_reference(cv.sched.l, lambda);
          break;
        case Curve::Kind::pi3:
          val = pi3_reference(cv.pi3_k, lambda).p;
          break;
      }
      row[c + 1] = val;
    }
  }
  return table;
}

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_float(row[c]);
    }
    out << "\r\n";
  }
}

nlohmann::json table_to_json(const SweepTable& table) {
  nlohmann::json j;
  j["schema"] = 1;
  j["columns"] = table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  j["rows"] = std::move(rows);
  return j;
}

nlohmann::json sweep_meta(const SweepSpec& spec, const SweepTable& table) {
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = "sweep";
  j["delta_sq"] = spec.delta_sq;
  j["l_values"] = spec.l_values;
  j["grid"] = {{"min", spec.grid.min},
               {"max", spec.grid.max},
               {"points", spec.grid.points},
               {"spacing", spec.grid.log_spacing ? "log" : "linear"}};
  nlohmann::json refs = nlohmann::json::array();
  if (spec.ref_closed) refs.push_back("closed_form");
  if (spec.ref_grover) refs.push_back("grover");
  if (spec.ref_pi3) refs.push_back("pi3");
  j["references"] = std::move(refs);
  if (spec.ref_pi3) j["pi3_k"] = spec.pi3_ks;
  j["columns"] = table.columns;
  j["rows"] = table.rows.size();
  return j;
}

}  // namespace fpsearch
