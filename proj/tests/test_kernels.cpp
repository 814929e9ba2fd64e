#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "grouplog/kernels.hpp"
#include "grouplog/rng.hpp"
#include "grouplog/zmod.hpp"

using namespace grouplog;

namespace {

std::vector<u64> random_vec(Rng& rng, std::size_t n, u64 m) {
  std::vector<u64> v(n);
  for (auto& x : v) x = rng.below(m);
  return v;
}

// every variant must agree with the scalar reference bit for bit
void check_equivalence(const Kernels& k, u64 m) {
  const Kernels& ref = scalar_kernels();
  Rng rng = Rng::derive({99, m});
  for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 64ul, 129ul}) {
    auto a = random_vec(rng, n, m);
    auto b = random_vec(rng, n, m);
    u64 c = rng.below(m);
    std::vector<u64> out1(n), out2(n);

    k.add(out1.data(), a.data(), b.data(), n, m);
    ref.add(out2.data(), a.data(), b.data(), n, m);
    CHECK(out1 == out2);

    k.sub(out1.data(), a.data(), b.data(), n, m);
    ref.sub(out2.data(), a.data(), b.data(), n, m);
    CHECK(out1 == out2);

    k.scale(out1.data(), a.data(), n, c, m);
    ref.scale(out2.data(), a.data(), n, c, m);
    CHECK(out1 == out2);

    out1 = b;
    out2 = b;
    k.axpy(out1.data(), a.data(), n, c, m);
    ref.axpy(out2.data(), a.data(), n, c, m);
    CHECK(out1 == out2);
  }
}

}  // namespace

TEST_CASE("scalar kernels match plain modular arithmetic") {
  u64 m = 729;  // 3^6
  std::vector<u64> a{1, 700, 728}, b{728, 30, 1}, out(3);
  scalar_kernels().add(out.data(), a.data(), b.data(), 3, m);
  CHECK(out == std::vector<u64>{0, 1, 0});
  scalar_kernels().sub(out.data(), a.data(), b.data(), 3, m);
  CHECK(out == std::vector<u64>{2, 670, 727});
  scalar_kernels().scale(out.data(), a.data(), 3, 5, m);
  CHECK(out == std::vector<u64>{5, (700 * 5) % 729, (728 * 5) % 729});
}

TEST_CASE("simd variants agree with the scalar reference") {
  const Kernels* simd = avx2_kernels();
  if (!simd) {
    MESSAGE("avx2 not available, dispatcher falls back to scalar");
    CHECK(&kernels() == &scalar_kernels());
    return;
  }
  // moduli across the supported range, including powers of two and odd p^n
  for (u64 m : {2ull, 4ull, 256ull, 65536ull, 729ull, 3486784401ull, 4294967291ull, 3ull}) {
    check_equivalence(*simd, m);
  }
}

TEST_CASE("runtime dispatch picks a working kernel") {
  const Kernels& k = kernels();
  std::vector<u64> a{7}, b{9}, out(1);
  k.add(out.data(), a.data(), b.data(), 1, 13);
  CHECK(out[0] == 3);
}
