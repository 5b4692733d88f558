#pragma once
// Word-size modular arithmetic for fast polynomial screening.
//
// The hot loops are expressed as a small kernel table with a scalar
// reference implementation and an AVX2 variant chosen at runtime. Both
// variants return bit-identical residues; the AVX2 path computes in
// double precision, which is exact for moduli below 2^26.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ecfam {
class Poly;
}

namespace ecfam::modp {

using Residue = std::uint32_t;

/// Largest prime below 2^26.
inline constexpr Residue kPrime = 67108859;
/// A second screening prime.
inline constexpr Residue kPrime2 = 67108837;
inline constexpr Residue kMaxModulus = Residue(1) << 26;

struct Kernels {
  const char* name;
  /// dst[i] = (dst[i] + s * src[i]) mod p
  void (*axpy)(Residue* dst, const Residue* src, Residue s, std::size_t n, Residue p);
  /// dst[i] = (s * dst[i]) mod p
  void (*scale)(Residue* dst, Residue s, std::size_t n, Residue p);
  /// out[j] = c(x[j]) mod p for a polynomial c of `nc` coefficients, low degree first.
  void (*horner_many)(const Residue* c, std::size_t nc, const Residue* x, Residue* out, std::size_t nx,
                      Residue p);
};

const Kernels& scalar_kernels();
/// nullptr when the binary or the CPU lacks AVX2+FMA.
const Kernels* avx2_kernels();
/// AVX2 when available unless ECFAM_SIMD=scalar is set in the environment.
const Kernels& active_kernels();

inline Residue add(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }
inline Residue mul(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}
Residue pow(Residue a, std::uint64_t e, Residue p);
Residue inv(Residue a, Residue p);  // a != 0

/// Dense polynomial over F_p, low degree first, no trailing zeros.
using ModPoly = std::vector<Residue>;

void trim(ModPoly& a);
inline int degree(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly mul(const ModPoly& a, const ModPoly& b, Residue p, const Kernels& k = active_kernels());
/// a mod b, b nonzero.
ModPoly rem(ModPoly a, const ModPoly& b, Residue p, const Kernels& k = active_kernels());
ModPoly derivative(const ModPoly& a, Residue p);
/// Monic gcd; gcd(0, 0) = 0.
ModPoly gcd(ModPoly a, ModPoly b, Residue p, const Kernels& k = active_kernels());

/// Reduction of a rational polynomial; nullopt when p divides a denominator.
std::optional<ModPoly> reduce(const Poly& f, Residue p);
Residue reduce(long long v, Residue p);

}  // namespace ecfam::modp
