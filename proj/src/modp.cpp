#include "ecfam/modp.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <tuple>

#include "ecfam/poly.hpp"

namespace ecfam::modp {

namespace {

void axpy_scalar(Residue* dst, const Residue* src, Residue s, std::size_t n, Residue p) {
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<Residue>((dst[i] + static_cast<std::uint64_t>(s) * src[i]) % p);
}

void scale_scalar(Residue* dst, Residue s, std::size_t n, Residue p) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = mul(dst[i], s, p);
}

void horner_many_scalar(const Residue* c, std::size_t nc, const Residue* x, Residue* out, std::size_t nx,
                        Residue p) {
  for (std::size_t j = 0; j < nx; ++j) {
    std::uint64_t acc = 0;
    for (std::size_t i = nc; i-- > 0;) acc = (acc * x[j] + c[i]) % p;
    out[j] = static_cast<Residue>(acc);
  }
}

const Kernels kScalar{"scalar", axpy_scalar, scale_scalar, horner_many_scalar};

}  // namespace

#if defined(ECFAM_HAVE_AVX2)
const Kernels* avx2_kernel_table();  // modp_avx2.cpp
#endif

const Kernels& scalar_kernels() { return kScalar; }

const Kernels* avx2_kernels() {
#if defined(ECFAM_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active_kernels() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("ECFAM_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
    const Kernels* v = avx2_kernels();
    return v ? v : &kScalar;
  }();
  return *chosen;
}

Residue pow(Residue a, std::uint64_t e, Residue p) {
  std::uint64_t r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Residue>(r);
}

Residue inv(Residue a, Residue p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  std::int64_t r0 = p, r1 = a % p, t0 = 0, t1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  return static_cast<Residue>(t0 < 0 ? t0 + p : t0);
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mul(const ModPoly& a, const ModPoly& b, Residue p, const Kernels& k) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) k.axpy(out.data() + i, b.data(), a[i], b.size(), p);
  trim(out);
  return out;
}

ModPoly rem(ModPoly a, const ModPoly& b, Residue p, const Kernels& k) {
  if (b.empty()) throw std::domain_error("polynomial remainder by zero");
  trim(a);
  const std::size_t db = b.size() - 1;
  const Residue lead_inv = inv(b.back(), p);
  while (a.size() >= b.size()) {
    Residue q = mul(a.back(), lead_inv, p);
    std::size_t shift = a.size() - b.size();
    k.axpy(a.data() + shift, b.data(), p - q, db, p);
    a.pop_back();
    trim(a);
  }
  return a;
}

ModPoly derivative(const ModPoly& a, Residue p) {
  if (a.size() <= 1) return {};
  ModPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mul(a[i], static_cast<Residue>(i % p), p);
  trim(d);
  return d;
}

ModPoly gcd(ModPoly a, ModPoly b, Residue p, const Kernels& k) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = rem(std::move(a), b, p, k);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) k.scale(a.data(), inv(a.back(), p), a.size(), p);
  return a;
}

Residue reduce(long long v, Residue p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

std::optional<ModPoly> reduce(const Poly& f, Residue p) {
  ModPoly out;
  out.reserve(f.coeffs().size());
  for (const Rational& c : f.coeffs()) {
    Residue den = static_cast<Residue>(mpz_fdiv_ui(c.get_den_mpz_t(), p));
    if (den == 0) return std::nullopt;
    Residue num = static_cast<Residue>(mpz_fdiv_ui(c.get_num_mpz_t(), p));
    out.push_back(mul(num, inv(den, p), p));
  }
  trim(out);
  return out;
}

}  // namespace ecfam::modp
