#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "fdq/kern.hpp"

using namespace fdq::kern;

namespace {

std::vector<cx> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cx> v(n);
  for (auto& x : v) x = cx(d(rng), d(rng));
  return v;
}

double rel_diff(const std::vector<cx>& a, const std::vector<cx>& b) {
  double num = 0.0, den = 1e-300;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(a[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("kernel registry") {
  CHECK(std::string(scalar_kernels().name) == "scalar");
  std::string active = active_kernels().name;
  CHECK((active == "scalar" || active == "avx2" || active == "neon"));
  if (simd_kernels()) {
    CHECK(std::string(simd_kernels()->name) != "scalar");
  }
}

TEST_CASE("scalar and simd kernels agree") {
  const Kernels* simd = simd_kernels();
  if (!simd) return;  // nothing to compare on this host
  const Kernels& ref = scalar_kernels();
  std::mt19937_64 rng(11);

  // odd sizes exercise the vector tail paths
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 32u, 37u}) {
    auto a = random_vec(rng, n * n), b = random_vec(rng, n * n);
    std::vector<cx> c1(n * n), c2(n * n);
    ref.gemm(n, n, n, a.data(), b.data(), c1.data());
    simd->gemm(n, n, n, a.data(), b.data(), c2.data());
    CHECK(rel_diff(c1, c2) < 1e-13);

    auto x = random_vec(rng, n), y1 = random_vec(rng, n);
    auto y2 = y1;
    cx alpha(0.7, -0.3);
    ref.axpy(n, alpha, x.data(), y1.data());
    simd->axpy(n, alpha, x.data(), y2.data());
    CHECK(rel_diff(y1, y2) < 1e-13);

    auto z1 = random_vec(rng, n);
    auto z2 = z1;
    ref.scal(n, alpha, z1.data());
    simd->scal(n, alpha, z2.data());
    CHECK(rel_diff(z1, z2) < 1e-13);

    CHECK(ref.nrm2sq(n, x.data()) == doctest::Approx(simd->nrm2sq(n, x.data())).epsilon(1e-13));
    cx d1 = ref.dotc(n, x.data(), y1.data());
    cx d2 = simd->dotc(n, x.data(), y1.data());
    CHECK(std::abs(d1 - d2) < 1e-12 * (1.0 + std::abs(d1)));
  }
}

TEST_CASE("rectangular gemm and identities") {
  const Kernels& ref = scalar_kernels();
  std::mt19937_64 rng(13);
  std::size_t m = 4, k = 7, n = 3;
  auto a = random_vec(rng, m * k), b = random_vec(rng, k * n);
  std::vector<cx> c(m * n);
  ref.gemm(m, n, k, a.data(), b.data(), c.data());
  // spot-check one entry against a direct sum
  cx want(0.0, 0.0);
  for (std::size_t l = 0; l < k; ++l) want += a[2 * k + l] * b[l * n + 1];
  CHECK(std::abs(c[2 * n + 1] - want) < 1e-14);

  if (const Kernels* simd = simd_kernels()) {
    std::vector<cx> c2(m * n);
    simd->gemm(m, n, k, a.data(), b.data(), c2.data());
    CHECK(rel_diff(c, c2) < 1e-13);
  }
}
