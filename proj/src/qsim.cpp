#include "fpsearch/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fpsearch {

static_assert(std::endian::native == std::endian::little,
              "statevector dump assumes a little-endian host");

namespace {

constexpr int kMaxQubits = 16;
constexpr int kMaxCustomQubits = 8;
constexpr double kUnitaryTol = 1e-12;

void validate_marked(int n, const std::vector<std::uint64_t>& marked) {
  if (marked.empty()) throw std::invalid_argument("instance: marked set must be nonempty");
  const std::uint64_t dim = 1ull << n;
  for (std::uint64_t m : marked)
    if (m >= dim)
      throw std::invalid_argument("instance: marked index " + std::to_string(m) +
                                  " out of range for n = " + std::to_string(n));
}

void validate_n(int n, int cap, const char* what) {
  if (n < 1 || n > cap)
    throw std::invalid_argument(std::string("instance: ") + what + " supports 1 <= n <= " +
                                std::to_string(cap) + ", got " + std::to_string(n));
}

}  // namespace

Engine engine_from_string(const std::string& s) {
  if (s == "direct") return Engine::direct;
  if (s == "circuit") return Engine::circuit;
  throw std::invalid_argument("unknown engine '" + s + "'");
}

double ProblemInstance::lambda() const {
  if (prep == Prep::uniform)
    return static_cast<double>(marked.size()) / static_cast<double>(dim());
  double acc = 0.0;
  for (std::uint64_t m : marked) acc += std::norm(source[m]);
  return acc;
}

ProblemInstance make_uniform_instance(int n, std::vector<std::uint64_t> marked) {
  validate_n(n, kMaxQubits, "uniform preparation");
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  validate_marked(n, marked);
  ProblemInstance inst;
  inst.n = n;
  inst.marked = std::move(marked);
  inst.prep = Prep::uniform;
  return inst;
}

ProblemInstance make_custom_instance(int n, std::vector<std::uint64_t> marked, CVec matrix) {
  validate_n(n, kMaxCustomQubits, "custom preparation");
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  validate_marked(n, marked);
  const std::uint64_t dim = 1ull << n;
  if (matrix.size() != dim * dim)
    throw std::invalid_argument("instance: custom preparation matrix must be 2^n x 2^n");
  // columns must be orthonormal
  for (std::uint64_t i = 0; i < dim; ++i) {
    for (std::uint64_t j = i; j < dim; ++j) {
      Complex acc{0.0, 0.0};
      for (std::uint64_t r = 0; r < dim; ++r) acc += std::conj(matrix[r * dim + i]) * matrix[r * dim + j];
      const Complex want = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      if (std::abs(acc - want) > kUnitaryTol)
        throw std::invalid_argument("instance: custom preparation matrix is not unitary");
    }
  }
  ProblemInstance inst;
  inst.n = n;
  inst.marked = std::move(marked);
  inst.prep = Prep::custom;
  inst.source.resize(dim);
  for (std::uint64_t r = 0; r < dim; ++r) inst.source[r] = matrix[r * dim];  // A |0>
  inst.prep_matrix = std::move(matrix);
  return inst;
}

StateVector prepare(const ProblemInstance& inst, bool with_ancilla, Backend backend) {
  StateVector sv;
  sv.n = inst.n;
  sv.has_ancilla = with_ancilla;
  const std::uint64_t dim = inst.dim();
  sv.amps.assign(with_ancilla ? 2 * dim : dim, Complex{0.0, 0.0});
  if (inst.prep == Prep::uniform) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    kernels::add_const(backend, sv.amps, dim, Complex{amp, 0.0});
  } else {
    for (std::uint64_t r = 0; r < dim; ++r) sv.amps[r] = inst.source[r];
  }
  return sv;
}

void direct_reflect_t(StateVector& sv, double beta, const std::vector<std::uint64_t>& marked,
                      Backend backend) {
  kernels::phase_indexed(backend, sv.amps, marked, std::polar(1.0, beta));
}

void direct_reflect_s(StateVector& sv, double alpha, const ProblemInstance& inst,
                      Backend backend) {
  const std::uint64_t dim = inst.dim();
  const Complex k = 1.0 - std::polar(1.0, -alpha);
  if (inst.prep == Prep::uniform) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    // <s|psi> over the register block only; the ancilla-1 branch (if present)
    // holds no source component
    Complex ovl{0.0, 0.0};
    if (sv.has_ancilla) {
      CVec reg(sv.amps.begin(), sv.amps.begin() + dim);
      ovl = amp * kernels::sum(backend, reg);
    } else {
      ovl = amp * kernels::sum(backend, sv.amps);
    }
    kernels::add_const(backend, sv.amps, dim, -k * ovl * amp);
  } else {
    CVec reg(sv.amps.begin(), sv.amps.begin() + dim);
    const Complex ovl = kernels::dot(backend, inst.source, reg);
    kernels::axpy(backend, sv.amps, -k * ovl, inst.source);
  }
}

void circuit_reflect_t(StateVector& sv, double beta, const std::vector<std::uint64_t>& marked,
                       Backend backend) {
  if (!sv.has_ancilla) throw std::logic_error("circuit_reflect_t: state has no ancilla");
  const std::uint64_t half = sv.register_dim();
  kernels::swap_pairs(backend, sv.amps, marked, half);  // oracle: flip ancilla on marked
  kernels::phase_halves(backend, sv.amps, half, std::polar(1.0, -beta / 2),
                        std::polar(1.0, beta / 2));  // R_0(beta) on the ancilla
  kernels::swap_pairs(backend, sv.amps, marked, half);  // uncompute
}

void circuit_reflect_s(StateVector& sv, double alpha, const ProblemInstance& inst,
                       Backend backend) {
  if (!sv.has_ancilla) throw std::logic_error("circuit_reflect_s: state has no ancilla");
  const std::uint64_t half = sv.register_dim();
  static const std::vector<std::uint64_t> all_zeros{0};

  // A^dagger on the register, both ancilla branches
  if (inst.prep == Prep::uniform) {
    for (int q = 0; q < inst.n; ++q) kernels::hadamard(backend, sv.amps, q);
  } else {
    const std::uint64_t dim = inst.dim();
    CVec adj(dim * dim);
    for (std::uint64_t r = 0; r < dim; ++r)
      for (std::uint64_t c = 0; c < dim; ++c) adj[r * dim + c] = std::conj(inst.prep_matrix[c * dim + r]);
    kernels::dense_apply(backend, adj, dim, sv.amps);
    CVec upper(sv.amps.begin() + half, sv.amps.end());
    kernels::dense_apply(backend, adj, dim, upper);
    std::copy(upper.begin(), upper.end(), sv.amps.begin() + half);
  }

  // conditional phase on the all-zeros register, mediated by the ancilla
  kernels::swap_pairs(backend, sv.amps, all_zeros, half);
  kernels::phase_halves(backend, sv.amps, half, std::polar(1.0, alpha / 2),
                        std::polar(1.0, -alpha / 2));  // R_0(-alpha) on the ancilla
  kernels::swap_pairs(backend, sv.amps, all_zeros, half);

  // A back on
  if (inst.prep == Prep::uniform) {
    for (int q = 0; q < inst.n; ++q) kernels::hadamard(backend, sv.amps, q);
  } else {
    const std::uint64_t dim = inst.dim();
    kernels::dense_apply(backend, inst.prep_matrix, dim, sv.amps);
    CVec upper(sv.amps.begin() + half, sv.amps.end());
    kernels::dense_apply(backend, inst.prep_matrix, dim, upper);
    std::copy(upper.begin(), upper.end(), sv.amps.begin() + half);
  }
}

RunResult run(const PhaseSchedule& schedule, const ProblemInstance& inst, Engine engine,
              Backend backend) {
  RunResult out;
  const bool circuit = (engine == Engine::circuit);
  StateVector sv = prepare(inst, circuit, backend);
  const std::uint64_t half = sv.register_dim();
  for (int j = 0; j < schedule.l; ++j) {
    if (circuit) {
      circuit_reflect_t(sv, schedule.betas[j], inst.marked, backend);
      out.max_ancilla_leak =
          std::max(out.max_ancilla_leak, kernels::norm2_tail(backend, sv.amps, half));
      circuit_reflect_s(sv, schedule.alphas[j], inst, backend);
      out.max_ancilla_leak =
          std::max(out.max_ancilla_leak, kernels::norm2_tail(backend, sv.amps, half));
    } else {
      direct_reflect_t(sv, schedule.betas[j], inst.marked, backend);
      direct_reflect_s(sv, schedule.alphas[j], inst, backend);
    }
    kernels::scale(backend, sv.amps, Complex{-1.0, 0.0});
  }
  out.p_marked = kernels::prob_indexed(backend, sv.amps, inst.marked);
  out.queries = 2ll * schedule.l;
  out.final = std::move(sv);
  return out;
}

CVec register_state(const StateVector& sv) {
  if (!sv.has_ancilla) return sv.amps;
  return CVec(sv.amps.begin(), sv.amps.begin() + sv.register_dim());
}

double fidelity(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity: size mismatch");
  return std::abs(ref::dot(a, b));
}

namespace {

struct DumpHeader {
  char magic[4];
  std::uint32_t version;
  std::uint32_t n;
  std::uint32_t flags;
};
static_assert(sizeof(DumpHeader) == 16);

constexpr std::uint32_t kDumpVersion = 1;
constexpr std::uint32_t kFlagAncilla = 1u;

}  // namespace

void dump_statevector(const StateVector& sv, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  DumpHeader h{{'F', 'P', 'Q', 'S'},
               kDumpVersion,
               static_cast<std::uint32_t>(sv.n),
               sv.has_ancilla ? kFlagAncilla : 0u};
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(sv.amps.data()),
            static_cast<std::streamsize>(sv.amps.size() * sizeof(Complex)));
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

StateVector load_statevector(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  DumpHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, "FPQS", 4) != 0)
    throw std::runtime_error("'" + path + "' is not a statevector dump");
  if (h.version != kDumpVersion)
    throw std::runtime_error("unsupported dump version " + std::to_string(h.version));
  if (h.n < 1 || h.n > kMaxQubits) throw std::runtime_error("dump header: bad qubit count");
  StateVector sv;
  sv.n = static_cast<int>(h.n);
  sv.has_ancilla = (h.flags & kFlagAncilla) != 0;
  const std::uint64_t count = (sv.has_ancilla ? 2ull : 1ull) << h.n;
  sv.amps.resize(count);
  in.read(reinterpret_cast<char*>(sv.amps.data()),
          static_cast<std::streamsize>(count * sizeof(Complex)));
  if (!in) throw std::runtime_error("'" + path + "' truncated");
  return sv;
}

}  // namespace fpsearch
