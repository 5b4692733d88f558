// AVX2 variants of the mod-p kernels. Compiled with -mavx2 -mfma and only
// reached after a runtime CPU check.
#include <immintrin.h>

#include "ecfam/modp.hpp"

namespace ecfam::modp {

namespace {

// Reduces t in [0, 2^53) with t an exact integer; result in [0, p).
inline __m256d reduce_pd(__m256d t, __m256d vp, __m256d vpinv) {
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, vpinv));
  __m256d r = _mm256_fnmadd_pd(q, vp, t);
  __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(neg, vp));
  __m256d big = _mm256_cmp_pd(r, vp, _CMP_GE_OQ);
  return _mm256_sub_pd(r, _mm256_and_pd(big, vp));
}

inline __m256d load4(const Residue* a) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a)));
}

inline void store4(Residue* a, __m256d v) {
  _mm_storeu_si128(reinterpret_cast<__m128i*>(a), _mm256_cvttpd_epi32(v));
}

void axpy_avx2(Residue* dst, const Residue* src, Residue s, std::size_t n, Residue p) {
  const __m256d vp = _mm256_set1_pd(p), vpinv = _mm256_set1_pd(1.0 / p), vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_fmadd_pd(vs, load4(src + i), load4(dst + i));
    store4(dst + i, reduce_pd(t, vp, vpinv));
  }
  for (; i < n; ++i) dst[i] = static_cast<Residue>((dst[i] + static_cast<std::uint64_t>(s) * src[i]) % p);
}

void scale_avx2(Residue* dst, Residue s, std::size_t n, Residue p) {
  const __m256d vp = _mm256_set1_pd(p), vpinv = _mm256_set1_pd(1.0 / p), vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(dst + i, reduce_pd(_mm256_mul_pd(vs, load4(dst + i)), vp, vpinv));
  for (; i < n; ++i) dst[i] = mul(dst[i], s, p);
}

void horner_many_avx2(const Residue* c, std::size_t nc, const Residue* x, Residue* out, std::size_t nx,
                      Residue p) {
  const __m256d vp = _mm256_set1_pd(p), vpinv = _mm256_set1_pd(1.0 / p);
  std::size_t j = 0;
  for (; j + 4 <= nx; j += 4) {
    __m256d vx = load4(x + j);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = nc; i-- > 0;)
      acc = reduce_pd(_mm256_fmadd_pd(acc, vx, _mm256_set1_pd(c[i])), vp, vpinv);
    store4(out + j, acc);
  }
  for (; j < nx; ++j) {
    std::uint64_t acc = 0;
    for (std::size_t i = nc; i-- > 0;) acc = (acc * x[j] + c[i]) % p;
    out[j] = static_cast<Residue>(acc);
  }
}

const Kernels kAvx2{"avx2", axpy_avx2, scale_avx2, horner_many_avx2};

}  // namespace

const Kernels* avx2_kernel_table() { return &kAvx2; }

}  // namespace ecfam::modp
