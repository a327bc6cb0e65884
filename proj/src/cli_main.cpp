#include "fpsearch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpsearch/model2d.hpp"
#include "fpsearch/qsim.hpp"
#include "fpsearch/schedule.hpp"
#include "fpsearch/sweep.hpp"
#include "fpsearch/verify.hpp"
#include "fpsearch/verify_config.hpp"

namespace fpsearch {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct PhasesOpts {
  int l = 1;
  double delta_sq = 0.1;
  std::string mode = "amplify";
  std::vector<int> nest_ls;
  std::string format = "json";
};

struct MinlOpts {
  double delta_sq = 0.1;
  double lambda0 = 0.0;
  std::string format = "text";
};

struct SweepOpts {
  double delta_sq = 0.1;
  std::vector<int> l_values;
  double lambda_min = 1e-3;
  double lambda_max = 1.0;
  int points = 200;
  std::string spacing = "log";
  std::vector<std::string> refs;
  std::vector<int> pi3_ks = {2};
  std::string out_path;
  std::string format = "csv";
};

struct SimulateOpts {
  int n = 1;
  std::vector<std::uint64_t> marked;
  std::uint64_t num_marked = 0;
  bool num_marked_set = false;
  int l = 1;
  double delta_sq = 0.1;
  std::string engine = "direct";
  std::string mode = "amplify";
  std::string dump_path;
  std::string format = "text";
};

struct VerifyOpts {
  bool full = false;
  std::string backend;
  std::string format = "text";
};

int cmd_phases(const PhasesOpts& o, std::ostream& out, std::ostream& err) {
  PhaseSchedule s;
  const Mode mode = mode_from_string(o.mode);
  const double delta = std::sqrt(o.delta_sq);
  if (o.nest_ls.empty()) {
    s = fixed_point_phases(o.l, delta, mode);
  } else {
    std::vector<int> ls;
    ls.push_back(o.l);
    ls.insert(ls.end(), o.nest_ls.begin(), o.nest_ls.end());
    s = nest_many(ls, delta, mode);
  }
  if (o.format == "json") {
    json j = s;
    j["schema"] = 1;
    out << j.dump(2) << "\n";
  } else {
    out << "j,alpha,beta\r\n";
    for (int j = 0; j < s.l; ++j)
      out << (j + 1) << ',' << format_float(s.alphas[static_cast<std::size_t>(j)]) << ','
          << format_float(s.betas[static_cast<std::size_t>(j)]) << "\r\n";
  }
  (void)err;
  return kExitOk;
}

int cmd_minl(const MinlOpts& o, std::ostream& out, std::ostream& err) {
  if (!(o.delta_sq > 0.0)) {
    err << "error: --delta-sq must be positive (delta = 0 has no finite width)\n";
    return kExitUsage;
  }
  if (!(o.lambda0 > 0.0 && o.lambda0 <= 1.0)) {
    err << "error: --lambda0 must lie in (0, 1]\n";
    return kExitUsage;
  }
  const MinQueriesResult r = min_queries(std::sqrt(o.delta_sq), o.lambda0);
  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["delta_sq"] = o.delta_sq;
    j["lambda0"] = o.lambda0;
    j["L"] = r.L;
    j["queries"] = r.queries;
    j["width"] = r.width_at;
    j["width_prev"] = r.width_prev;
    j["bound"] = r.bound;
    out << j.dump(2) << "\n";
  } else {
    out << "L queries width width_prev bound\n";
    out << r.L << ' ' << r.queries << ' ' << format_float(r.width_at) << ' '
        << format_float(r.width_prev) << ' ' << format_float(r.bound) << "\n";
    out << "note: minimal odd L certified by width(" << r.L
        << ") <= lambda0 < width(" << (r.L >= 3 ? r.L - 2 : 1)
        << "); query lower bound log(2/delta)/sqrt(lambda0) = " << format_float(r.bound)
        << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const SweepOpts& o, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.delta_sq = o.delta_sq;
  spec.l_values = o.l_values;
  spec.grid.min = o.lambda_min;
  spec.grid.max = o.lambda_max;
  spec.grid.points = o.points;
  spec.grid.log_spacing = o.spacing == "log";
  if (!o.refs.empty()) {
    spec.ref_closed = false;
    for (const std::string& r : o.refs) {
      if (r == "closed_form") spec.ref_closed = true;
      else if (r == "grover") spec.ref_grover = true;
      else if (r == "pi3") spec.ref_pi3 = true;
    }
  }
  spec.pi3_ks = o.pi3_ks;

  const SweepTable table = run_sweep(spec);

  std::string payload;
  if (o.format == "json") {
    payload = table_to_json(table).dump(2) + "\n";
  } else {
    std::ostringstream csv;
    write_csv(table, csv);
    payload = csv.str();
  }

  if (o.out_path.empty()) {
    out << payload;
    return kExitOk;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << o.out_path << " for writing\n";
    return kExitIo;
  }
  f << payload;
  f.close();
  if (!f) {
    err << "error: write to " << o.out_path << " failed\n";
    return kExitIo;
  }
  const std::string meta_path = o.out_path + ".meta.json";
  std::ofstream m(meta_path, std::ios::binary);
  if (!m) {
    err << "error: cannot open " << meta_path << " for writing\n";
    return kExitIo;
  }
  m << sweep_meta(spec, table).dump(2) << "\n";
  m.close();
  if (!m) {
    err << "error: write to " << meta_path << " failed\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_simulate(const SimulateOpts& o, std::ostream& out, std::ostream& err) {
  std::vector<std::uint64_t> marked = o.marked;
  if (o.num_marked_set) {
    marked.resize(o.num_marked);
    for (std::uint64_t i = 0; i < o.num_marked; ++i) marked[i] = i;
  }
  if (marked.empty()) {
    err << "error: no marked states (use --marked or --num-marked)\n";
    return kExitUsage;
  }
  if (!o.dump_path.empty() && o.engine == "2d") {
    err << "error: --dump requires a statevector engine (direct or circuit)\n";
    return kExitUsage;
  }

  const Mode mode = mode_from_string(o.mode);
  const double delta = std::sqrt(o.delta_sq);
  const PhaseSchedule sched = fixed_point_phases(o.l, delta, mode);

  double lambda = 0.0;
  double p_marked = 0.0;
  double leak = 0.0;
  bool have_leak = false;

  if (o.engine == "2d") {
    if (o.n < 1 || o.n > 16) {
      err << "error: --n must lie in [1, 16]\n";
      return kExitUsage;
    }
    std::vector<std::uint64_t> sorted = marked;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.back() >= (1ull << o.n)) {
      err << "error: marked index out of range for n = " << o.n << "\n";
      return kExitUsage;
    }
    lambda = static_cast<double>(sorted.size()) / static_cast<double>(1ull << o.n);
    p_marked = apply_sequence(sched, make_params(lambda, delta)).p_target();
  } else {
    const ProblemInstance inst = make_uniform_instance(o.n, marked);
    lambda = inst.lambda();
    const Engine engine = engine_from_string(o.engine);
    const RunResult rr = run(sched, inst, engine);
    p_marked = rr.p_marked;
    if (engine == Engine::circuit) {
      leak = rr.max_ancilla_leak;
      have_leak = true;
    }
    if (!o.dump_path.empty()) {
      try {
        dump_statevector(rr.final, o.dump_path);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
      }
    }
  }

  // closed-form prediction for the probability on the marked subspace; in
  // avoid mode the amplified component is the orthogonal one, so the marked
  // probability is the complement of the closed form at overlap 1 - lambda
  const double p_closed =
      mode == Mode::amplify
          ? success_prob_closed(sched.L, delta, lambda)
          : 1.0 - success_prob_closed(sched.L, delta, 1.0 - lambda);
  const double diff = std::abs(p_marked - p_closed);
  const long long queries = 2ll * o.l;

  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["n"] = o.n;
    j["marked"] = marked.size();
    j["lambda"] = lambda;
    j["l"] = o.l;
    j["L"] = sched.L;
    j["queries"] = queries;
    j["delta_sq"] = o.delta_sq;
    j["engine"] = o.engine;
    j["mode"] = o.mode;
    j["p_marked"] = p_marked;
    j["p_closed"] = p_closed;
    j["abs_diff"] = diff;
    if (have_leak) j["ancilla_leak"] = leak;
    out << j.dump(2) << "\n";
  } else {
    out << "lambda = " << format_float(lambda) << "\n";
    out << "L = " << sched.L << ", queries = " << queries << "\n";
    out << "p_marked = " << format_float(p_marked) << "\n";
    out << "p_closed = " << format_float(p_closed) << "\n";
    out << "abs_diff = " << format_float(diff) << "\n";
    if (have_leak) out << "ancilla_leak = " << format_float(leak) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  VerifyOptions vo;
  vo.full = o.full;
  if (!o.backend.empty()) vo.backend = backend_from_string(o.backend);
  const std::vector<SuiteResult> results = run_verification(vo);
  const bool ok = all_pass(results);

  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["mode"] = o.full ? "full" : "quick";
    j["backend"] = backend_name(vo.backend);
    j["config_version"] = verifycfg::kVersion;
    j["all_pass"] = ok;
    json suites = json::array();
    for (const SuiteResult& r : results) {
      json s;
      s["criterion"] = r.criterion;
      s["name"] = r.name;
      s["pass"] = r.pass;
      s["detail"] = r.detail;
      s["seconds"] = r.seconds;
      suites.push_back(std::move(s));
    }
    j["suites"] = std::move(suites);
    out << j.dump(2) << "\n";
  } else {
    for (const SuiteResult& r : results) {
      char head[32];
      if (r.criterion > 0)
        std::snprintf(head, sizeof head, "criterion %2d", r.criterion);
      else
        std::snprintf(head, sizeof head, "invariants  ");
      char line[640];
      std::snprintf(line, sizeof line, "%s  %s  %-32s %s (%.2f s)\n", head,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
                    r.seconds);
      out << line;
    }
    out << (ok ? "all suites passed" : "FAILURES present") << " ["
        << (o.full ? "full" : "quick") << " grid, backend "
        << backend_name(vo.backend) << ", config v" << verifycfg::kVersion << "]\n";
  }
  if (!ok) {
    for (const SuiteResult& r : results)
      if (!r.pass) err << "failed: " << r.name << "\n";
    return kExitVerifyFail;
  }
  return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fixed-point amplitude amplification toolkit"};
  app.name("fpsearch");
  app.require_subcommand(1);

  PhasesOpts po;
  CLI::App* phases = app.add_subcommand("phases", "print a phase schedule");
  phases->add_option("--l", po.l, "iterate count of the (first) component")
      ->required()
      ->check(CLI::Range(0, 1000000));
  phases->add_option("--delta-sq", po.delta_sq, "squared error bound delta^2")
      ->check(CLI::Range(0.0, 1.0));
  phases->add_option("--mode", po.mode, "amplify or avoid")
      ->check(CLI::IsMember({"amplify", "avoid"}));
  phases
      ->add_option("--nest", po.nest_ls,
                   "iterate counts to nest around --l, inner to outer")
      ->delimiter(',');
  phases->add_option("--format", po.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  MinlOpts mo;
  CLI::App* minl = app.add_subcommand(
      "minl", "minimal sequence length reaching the converged region");
  minl->add_option("--delta-sq", mo.delta_sq, "squared error bound delta^2")
      ->check(CLI::Range(0.0, 1.0));
  minl->add_option("--lambda0", mo.lambda0, "smallest overlap to cover")
      ->required();
  minl->add_option("--format", mo.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  SweepOpts so;
  CLI::App* sweep = app.add_subcommand("sweep", "tabulate success probability curves");
  sweep->add_option("--delta-sq", so.delta_sq, "squared error bound delta^2")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--l", so.l_values, "iterate counts, one pair of columns each")
      ->required()
      ->delimiter(',');
  sweep->add_option("--lambda-min", so.lambda_min, "grid start (exclusive of 0)");
  sweep->add_option("--lambda-max", so.lambda_max, "grid end");
  sweep->add_option("--points", so.points, "grid size")->check(CLI::Range(2, 1000000));
  sweep->add_option("--spacing", so.spacing, "log or linear")
      ->check(CLI::IsMember({"log", "linear"}));
  sweep
      ->add_option("--ref", so.refs,
                   "reference curves: closed_form, grover, pi3 (default closed_form)")
      ->delimiter(',')
      ->check(CLI::IsMember({"closed_form", "grover", "pi3"}));
  sweep->add_option("--pi3-k", so.pi3_ks, "recursion depths for the pi3 reference")
      ->delimiter(',')
      ->check(CLI::Range(0, 39));
  sweep->add_option("--out", so.out_path,
                    "output file (metadata goes to <file>.meta.json); stdout if absent");
  sweep->add_option("--format", so.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  SimulateOpts io;
  CLI::App* simulate = app.add_subcommand("simulate", "run one search instance");
  simulate->add_option("--n", io.n, "register qubits")->required()->check(CLI::Range(1, 16));
  CLI::Option* marked_opt =
      simulate->add_option("--marked", io.marked, "marked basis states")->delimiter(',');
  CLI::Option* num_marked_opt =
      simulate->add_option("--num-marked", io.num_marked, "mark states 0..m-1");
  marked_opt->excludes(num_marked_opt);
  simulate->add_option("--l", io.l, "iterate count")->required()->check(CLI::Range(0, 1000000));
  simulate->add_option("--delta-sq", io.delta_sq, "squared error bound delta^2")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--engine", io.engine, "2d, direct, or circuit")
      ->check(CLI::IsMember({"2d", "direct", "circuit"}));
  simulate->add_option("--mode", io.mode, "amplify or avoid")
      ->check(CLI::IsMember({"amplify", "avoid"}));
  simulate->add_option("--dump", io.dump_path, "write the final statevector to a file");
  simulate->add_option("--format", io.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify", "run the module invariant suites");
  CLI::Option* quick_opt = verify->add_flag("--quick", "coarse grids (default)");
  CLI::Option* full_opt = verify->add_flag("--full", vo.full, "acceptance grids");
  full_opt->excludes(quick_opt);
  verify->add_option("--backend", vo.backend, "serial or parallel")
      ->check(CLI::IsMember({"serial", "parallel"}));
  verify->add_option("--format", vo.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  io.num_marked_set = num_marked_opt->count() > 0;

  try {
    if (phases->parsed()) return cmd_phases(po, out, err);
    if (minl->parsed()) return cmd_minl(mo, out, err);
    if (sweep->parsed()) return cmd_sweep(so, out, err);
    if (simulate->parsed()) return cmd_simulate(io, out, err);
    if (verify->parsed()) return cmd_verify(vo, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace fpsearch
