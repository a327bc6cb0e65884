#include <cmath>
#include <stdexcept>

#include "fpsearch/kernels.hpp"

namespace fpsearch {

const char* backend_name(Backend b) { return b == Backend::parallel ? "parallel" : "serial"; }

Backend backend_from_string(const std::string& s) {
  if (s == "serial") return Backend::serial;
  if (s == "parallel") return Backend::parallel;
  throw std::invalid_argument("unknown backend '" + s + "' (expected serial or parallel)");
}

namespace ref {

void scale(CVec& v, Complex f) {
  for (auto& a : v) a *= f;
}

void phase_indexed(CVec& v, const std::vector<std::uint64_t>& idx, Complex f) {
  for (std::uint64_t i : idx) v[i] *= f;
}

void swap_pairs(CVec& v, const std::vector<std::uint64_t>& idx, std::uint64_t offset) {
  for (std::uint64_t i : idx) std::swap(v[i], v[i + offset]);
}

void phase_halves(CVec& v, std::uint64_t half, Complex f0, Complex f1) {
  for (std::uint64_t i = 0; i < half; ++i) v[i] *= f0;
  for (std::uint64_t i = half; i < v.size(); ++i) v[i] *= f1;
}

Complex sum(const CVec& v) {
  Complex acc{0.0, 0.0};
  for (const auto& a : v) acc += a;
  return acc;
}

Complex dot(const CVec& a, const CVec& b) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm2(const CVec& v) { return norm2_tail(v, 0); }

double norm2_tail(const CVec& v, std::uint64_t begin) {
  double acc = 0.0;
  for (std::uint64_t i = begin; i < v.size(); ++i) acc += std::norm(v[i]);
  return acc;
}

double prob_indexed(const CVec& v, const std::vector<std::uint64_t>& idx) {
  double acc = 0.0;
  for (std::uint64_t i : idx) acc += std::norm(v[i]);
  return acc;
}

void add_const(CVec& v, std::uint64_t count, Complex summand) {
  for (std::uint64_t i = 0; i < count; ++i) v[i] += summand;
}

void axpy(CVec& v, Complex coeff, const CVec& s) {
  for (std::size_t i = 0; i < s.size(); ++i) v[i] += coeff * s[i];
}

void hadamard(CVec& v, int qubit) {
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::uint64_t bit = 1ull << qubit;
  const std::uint64_t pairs = v.size() / 2;
  for (std::uint64_t p = 0; p < pairs; ++p) {
    const std::uint64_t i = ((p >> qubit) << (qubit + 1)) | (p & (bit - 1));
    const Complex a = v[i];
    const Complex b = v[i | bit];
    v[i] = (a + b) * inv_sqrt2;
    v[i | bit] = (a - b) * inv_sqrt2;
  }
}

void dense_apply(const CVec& m, std::uint64_t dim, CVec& v) {
  CVec in(v.begin(), v.begin() + dim);
  for (std::uint64_t r = 0; r < dim; ++r) {
    Complex acc{0.0, 0.0};
    const Complex* row = m.data() + r * dim;
    for (std::uint64_t c = 0; c < dim; ++c) acc += row[c] * in[c];
    v[r] = acc;
  }
}

}  // namespace ref
}  // namespace fpsearch
