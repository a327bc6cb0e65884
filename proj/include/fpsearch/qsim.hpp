#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpsearch/kernels.hpp"
#include "fpsearch/schedule.hpp"

namespace fpsearch {

enum class Prep { uniform, custom };
enum class Engine { direct, circuit };

Engine engine_from_string(const std::string& s);  // also accepts "2d" upstream in the CLI

// A search instance: n register qubits, a nonempty set of marked basis states
// and the preparation convention. Custom preparation carries a dense row-major
// 2^n x 2^n unitary (validated to 1e-12) and is capped at n <= 8; uniform
// preparation supports the full n <= 16.
struct ProblemInstance {
  int n = 1;
  std::vector<std::uint64_t> marked;
  Prep prep = Prep::uniform;
  CVec prep_matrix;  // row-major, custom only
  CVec source;       // |s> = A|0...0>, cached for reflections

  std::uint64_t dim() const { return 1ull << n; }
  double lambda() const;  // squared overlap of |s> with the marked subspace
};

ProblemInstance make_uniform_instance(int n, std::vector<std::uint64_t> marked);
ProblemInstance make_custom_instance(int n, std::vector<std::uint64_t> marked, CVec matrix);

// Dense register state; with_ancilla adds one qubit as the highest bit, so the
// ancilla-0 branch is the first half of the array. Qubit 0 is the least
// significant bit of the basis index.
struct StateVector {
  int n = 1;
  bool has_ancilla = false;
  CVec amps;

  std::uint64_t register_dim() const { return 1ull << n; }
};

StateVector prepare(const ProblemInstance& inst, bool with_ancilla = false,
                    Backend backend = default_backend());

// multiplies marked amplitudes by e^{i beta}
void direct_reflect_t(StateVector& sv, double beta, const std::vector<std::uint64_t>& marked,
                      Backend backend = default_backend());

// rank-1 update psi -= (1 - e^{-i alpha}) <s|psi> |s>
void direct_reflect_s(StateVector& sv, double alpha, const ProblemInstance& inst,
                      Backend backend = default_backend());

// oracle / ancilla z-rotation / oracle; performs e^{-i beta/2} S_t(beta)
void circuit_reflect_t(StateVector& sv, double beta, const std::vector<std::uint64_t>& marked,
                       Backend backend = default_backend());

// A^dagger / ancilla-mediated phase on the all-zeros register / A; performs
// e^{i alpha/2} S_s(alpha)
void circuit_reflect_s(StateVector& sv, double alpha, const ProblemInstance& inst,
                       Backend backend = default_backend());

struct RunResult {
  double p_marked = 0.0;
  StateVector final;
  long long queries = 0;          // oracle invocations, 2l
  double max_ancilla_leak = 0.0;  // circuit engine only
};

RunResult run(const PhaseSchedule& schedule, const ProblemInstance& inst, Engine engine,
              Backend backend = default_backend());

// amplitudes of the register (ancilla-0 branch when an ancilla is present)
CVec register_state(const StateVector& sv);

// |<a|b>| of two unit vectors, insensitive to global phase
double fidelity(const CVec& a, const CVec& b);

// Binary dump: 16-byte header (magic "FPQS", version, n, flags with bit 0 =
// ancilla present) followed by interleaved little-endian float64 (re, im) pairs.
void dump_statevector(const StateVector& sv, const std::string& path);
StateVector load_statevector(const std::string& path);

}  // namespace fpsearch
