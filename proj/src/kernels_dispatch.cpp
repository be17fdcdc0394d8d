#include <cstdlib>

#include "hadwalk/kernels.hpp"

namespace hadwalk::kernels {

const Backend* avx2_backend();  // null on non-x86 builds
const Backend* neon_backend();  // null on non-aarch64 builds

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Backend& pick_backend() {
    if (const char* env = std::getenv("HW_SIMD")) {
        if (const Backend* b = backend_by_name(env)) return *b;
        fail(ErrorCode::BadInput, std::string("HW_SIMD names an unavailable backend: ") + env);
    }
    if (const Backend* b = avx2_backend(); b && cpu_has_avx2()) return *b;
    if (const Backend* b = neon_backend()) return *b;
    return scalar_backend();
}

}  // namespace

const Backend& active_backend() {
    static const Backend& backend = pick_backend();
    return backend;
}

const Backend* backend_by_name(std::string_view name) {
    for (const Backend* b : available_backends())
        if (name == b->name) return b;
    return nullptr;
}

std::vector<const Backend*> available_backends() {
    std::vector<const Backend*> out{&scalar_backend()};
    if (const Backend* b = avx2_backend(); b && cpu_has_avx2()) out.push_back(b);
    if (const Backend* b = neon_backend()) out.push_back(b);
    return out;
}

}  // namespace hadwalk::kernels
