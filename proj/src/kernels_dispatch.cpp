#include "normlab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace normlab::kernels {

const Ops& active_ops() {
  static const Ops* selected = []() -> const Ops* {
    const char* env = std::getenv("NORMLAB_KERNELS");
    if (env != nullptr) {
      if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
      if (std::strcmp(env, "avx2") == 0 && avx2_ops() != nullptr)
        return avx2_ops();
    }
    const Ops* v = avx2_ops();
    return v != nullptr ? v : &scalar_ops();
  }();
  return *selected;
}

}
