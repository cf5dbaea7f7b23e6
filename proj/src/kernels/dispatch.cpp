// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <string>

#include "misr/errors.hpp"
#include "misr/kernels.hpp"

namespace misr::kernels {

namespace detail {
const Kernels* avx2_table();
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<const Kernels*> g_active{nullptr};

const Kernels* auto_pick() {
  if (const Kernels* k = avx2()) return k;
  return &scalar();
}

}  // namespace

const Kernels* avx2() {
  static const Kernels* table =
      cpu_has_avx2() ? detail::avx2_table() : nullptr;
  return table;
}

const Kernels& active() {
  const Kernels* k = g_active.load(std::memory_order_acquire);
  if (!k) {
    k = auto_pick();
    g_active.store(k, std::memory_order_release);
  }
  return *k;
}

void select(std::string_view name) {
  const Kernels* k = nullptr;
  if (name == "auto") {
    k = auto_pick();
  } else if (name == "scalar") {
    k = &scalar();
  } else if (name == "avx2") {
    k = avx2();
    if (!k) throw invalid_parameter("avx2 kernels not supported on this CPU");
  } else {
    throw invalid_parameter("unknown kernel backend: " + std::string(name));
  }
  g_active.store(k, std::memory_order_release);
}

}  // namespace misr::kernels
