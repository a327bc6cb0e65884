#include <cmath>

#include "fpsearch/kernels.hpp"

// Same contracts as fpsearch::ref. Loops only go parallel past a size
// threshold: acceptance-scale states (2^10..2^17 amplitudes) are often small
// enough that thread startup dominates.

namespace fpsearch {

Backend default_backend() {
#ifdef _OPENMP
  return Backend::parallel;
#else
  return Backend::serial;
#endif
}

namespace omp {

namespace {
constexpr std::int64_t kMinParallel = 1 << 12;
}

void scale(CVec& v, Complex f) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) v[i] *= f;
}

void phase_indexed(CVec& v, const std::vector<std::uint64_t>& idx, Complex f) {
  const std::int64_t n = static_cast<std::int64_t>(idx.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) v[idx[i]] *= f;
}

void swap_pairs(CVec& v, const std::vector<std::uint64_t>& idx, std::uint64_t offset) {
  const std::int64_t n = static_cast<std::int64_t>(idx.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) std::swap(v[idx[i]], v[idx[i] + offset]);
}

void phase_halves(CVec& v, std::uint64_t half, Complex f0, Complex f1) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  const std::int64_t h = static_cast<std::int64_t>(half);
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) v[i] *= (i < h) ? f0 : f1;
}

Complex sum(const CVec& v) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) {
    re += v[i].real();
    im += v[i].imag();
  }
  return {re, im};
}

Complex dot(const CVec& a, const CVec& b) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const Complex t = std::conj(a[i]) * b[i];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

double norm2(const CVec& v) { return norm2_tail(v, 0); }

double norm2_tail(const CVec& v, std::uint64_t begin) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  const std::int64_t b = static_cast<std::int64_t>(begin);
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (n - b >= kMinParallel)
  for (std::int64_t i = b; i < n; ++i) acc += std::norm(v[i]);
  return acc;
}

double prob_indexed(const CVec& v, const std::vector<std::uint64_t>& idx) {
  const std::int64_t n = static_cast<std::int64_t>(idx.size());
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) acc += std::norm(v[idx[i]]);
  return acc;
}

void add_const(CVec& v, std::uint64_t count, Complex summand) {
  const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) v[i] += summand;
}

void axpy(CVec& v, Complex coeff, const CVec& s) {
  const std::int64_t n = static_cast<std::int64_t>(s.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) v[i] += coeff * s[i];
}

void hadamard(CVec& v, int qubit) {
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::uint64_t bit = 1ull << qubit;
  const std::int64_t pairs = static_cast<std::int64_t>(v.size() / 2);
#pragma omp parallel for schedule(static) if (pairs >= kMinParallel)
  for (std::int64_t p = 0; p < pairs; ++p) {
    const std::uint64_t u = static_cast<std::uint64_t>(p);
    const std::uint64_t i = ((u >> qubit) << (qubit + 1)) | (u & (bit - 1));
    const Complex a = v[i];
    const Complex b = v[i | bit];
    v[i] = (a + b) * inv_sqrt2;
    v[i | bit] = (a - b) * inv_sqrt2;
  }
}

void dense_apply(const CVec& m, std::uint64_t dim, CVec& v) {
  CVec in(v.begin(), v.begin() + dim);
  const std::int64_t d = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static) if (d >= 256)
  for (std::int64_t r = 0; r < d; ++r) {
    Complex acc{0.0, 0.0};
    const Complex* row = m.data() + static_cast<std::uint64_t>(r) * dim;
    for (std::int64_t c = 0; c < d; ++c) acc += row[c] * in[c];
    v[r] = acc;
  }
}

}  // namespace omp
}  // namespace fpsearch
