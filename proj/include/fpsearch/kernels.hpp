#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

// Statevector primitives in two interchangeable flavors: fpsearch::ref holds
// the plain serial loops and stays the correctness reference; fpsearch::omp
// parallelizes the same signatures with OpenMP (falling back to the serial
// body when built without it). Dispatch goes through the kernels:: wrappers.

namespace fpsearch {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

enum class Backend { serial, parallel };

// parallel when compiled with OpenMP, serial otherwise
Backend default_backend();
const char* backend_name(Backend b);
Backend backend_from_string(const std::string& s);

namespace ref {

void scale(CVec& v, Complex f);
void phase_indexed(CVec& v, const std::vector<std::uint64_t>& idx, Complex f);
void swap_pairs(CVec& v, const std::vector<std::uint64_t>& idx, std::uint64_t offset);
void phase_halves(CVec& v, std::uint64_t half, Complex f0, Complex f1);
Complex sum(const CVec& v);
Complex dot(const CVec& a, const CVec& b);  // sum_i conj(a_i) b_i
double norm2(const CVec& v);
double norm2_tail(const CVec& v, std::uint64_t begin);
double prob_indexed(const CVec& v, const std::vector<std::uint64_t>& idx);
void add_const(CVec& v, std::uint64_t count, Complex summand);  // v[0..count) += summand
void axpy(CVec& v, Complex coeff, const CVec& s);               // v += coeff * s
void hadamard(CVec& v, int qubit);
void dense_apply(const CVec& m, std::uint64_t dim, CVec& v);  // row-major m, v[0..dim)

}  // namespace ref

namespace omp {

void scale(CVec& v, Complex f);
void phase_indexed(CVec& v, const std::vector<std::uint64_t>& idx, Complex f);
void swap_pairs(CVec& v, const std::vector<std::uint64_t>& idx, std::uint64_t offset);
void phase_halves(CVec& v, std::uint64_t half, Complex f0, Complex f1);
Complex sum(const CVec& v);
Complex dot(const CVec& a, const CVec& b);
double norm2(const CVec& v);
double norm2_tail(const CVec& v, std::uint64_t begin);
double prob_indexed(const CVec& v, const std::vector<std::uint64_t>& idx);
void add_const(CVec& v, std::uint64_t count, Complex summand);
void axpy(CVec& v, Complex coeff, const CVec& s);
void hadamard(CVec& v, int qubit);
void dense_apply(const CVec& m, std::uint64_t dim, CVec& v);

}  // namespace omp

namespace kernels {

inline void scale(Backend b, CVec& v, Complex f) {
  b == Backend::parallel ? omp::scale(v, f) : ref::scale(v, f);
}
inline void phase_indexed(Backend b, CVec& v, const std::vector<std::uint64_t>& idx, Complex f) {
  b == Backend::parallel ? omp::phase_indexed(v, idx, f) : ref::phase_indexed(v, idx, f);
}
inline void swap_pairs(Backend b, CVec& v, const std::vector<std::uint64_t>& idx,
                       std::uint64_t offset) {
  b == Backend::parallel ? omp::swap_pairs(v, idx, offset) : ref::swap_pairs(v, idx, offset);
}
inline void phase_halves(Backend b, CVec& v, std::uint64_t half, Complex f0, Complex f1) {
  b == Backend::parallel ? omp::phase_halves(v, half, f0, f1) : ref::phase_halves(v, half, f0, f1);
}
inline Complex sum(Backend b, const CVec& v) {
  return b == Backend::parallel ? omp::sum(v) : ref::sum(v);
}
inline Complex dot(Backend b, const CVec& a, const CVec& v) {
  return b == Backend::parallel ? omp::dot(a, v) : ref::dot(a, v);
}
inline double norm2(Backend b, const CVec& v) {
  return b == Backend::parallel ? omp::norm2(v) : ref::norm2(v);
}
inline double norm2_tail(Backend b, const CVec& v, std::uint64_t begin) {
  return b == Backend::parallel ? omp::norm2_tail(v, begin) : ref::norm2_tail(v, begin);
}
inline double prob_indexed(Backend b, const CVec& v, const std::vector<std::uint64_t>& idx) {
  return b == Backend::parallel ? omp::prob_indexed(v, idx) : ref::prob_indexed(v, idx);
}
inline void add_const(Backend b, CVec& v, std::uint64_t count, Complex summand) {
  b == Backend::parallel ? omp::add_const(v, count, summand) : ref::add_const(v, count, summand);
}
inline void axpy(Backend b, CVec& v, Complex coeff, const CVec& s) {
  b == Backend::parallel ? omp::axpy(v, coeff, s) : ref::axpy(v, coeff, s);
}
inline void hadamard(Backend b, CVec& v, int qubit) {
  b == Backend::parallel ? omp::hadamard(v, qubit) : ref::hadamard(v, qubit);
}
inline void dense_apply(Backend b, const CVec& m, std::uint64_t dim, CVec& v) {
  b == Backend::parallel ? omp::dense_apply(m, dim, v) : ref::dense_apply(m, dim, v);
}

}  // namespace kernels

}  // namespace fpsearch
