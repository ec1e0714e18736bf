// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <cstring>

#include "btspec/kernels.hpp"

namespace btspec::kernels {

const Table& scalar() {
  static const Table t{walk_scalar, bilinear_scalar, "scalar"};
  return t;
}

const Table& avx2() {
  static const Table t{walk_avx2, bilinear_avx2, "avx2"};
  return t;
}

bool avx2_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}

const Table& active() {
  static const Table* chosen = [] {
    const char* env = std::getenv("BTSPEC_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar();
    return avx2_supported() ? &avx2() : &scalar();
  }();
  return *chosen;
}

}  // namespace btspec::kernels
