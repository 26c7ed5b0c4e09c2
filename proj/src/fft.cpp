#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace cardioseis::detail {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

std::size_t good_size(std::size_t n)
{
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

struct Plan {
    fftw_plan handle = nullptr;
    ~Plan()
    {
        if (handle) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(handle);
        }
    }
};

template <typename T>
struct FftwBuffer {
    T* ptr;
    explicit FftwBuffer(std::size_t n) : ptr(static_cast<T*>(fftw_malloc(sizeof(T) * n)))
    {
        if (!ptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse)
{
    if (data.empty()) return;
    const int n = static_cast<int>(data.size());
    FftwBuffer<fftw_complex> buf(data.size());
    std::memcpy(buf.ptr, data.data(), sizeof(fftw_complex) * data.size());
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.handle = fftw_plan_dft_1d(n, buf.ptr, buf.ptr, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan.handle);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = {buf.ptr[i][0], buf.ptr[i][1]};
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b)
{
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t n = good_size(out_len);
    const std::size_t nc = n / 2 + 1;

    FftwBuffer<double> ra(n), rb(n);
    FftwBuffer<fftw_complex> ca(nc), cb(nc);
    std::memset(ra.ptr, 0, sizeof(double) * n);
    std::memset(rb.ptr, 0, sizeof(double) * n);
    std::memcpy(ra.ptr, a.data(), sizeof(double) * a.size());
    std::memcpy(rb.ptr, b.data(), sizeof(double) * b.size());

    Plan fa, fb, inv;
    {
        std::lock_guard lock(planner_mutex());
        fa.handle = fftw_plan_dft_r2c_1d(static_cast<int>(n), ra.ptr, ca.ptr, FFTW_ESTIMATE);
        fb.handle = fftw_plan_dft_r2c_1d(static_cast<int>(n), rb.ptr, cb.ptr, FFTW_ESTIMATE);
        inv.handle = fftw_plan_dft_c2r_1d(static_cast<int>(n), ca.ptr, ra.ptr, FFTW_ESTIMATE);
    }
    fftw_execute(fa.handle);
    fftw_execute(fb.handle);
    for (std::size_t k = 0; k < nc; ++k) {
        const double re = ca.ptr[k][0] * cb.ptr[k][0] - ca.ptr[k][1] * cb.ptr[k][1];
        const double im = ca.ptr[k][0] * cb.ptr[k][1] + ca.ptr[k][1] * cb.ptr[k][0];
        ca.ptr[k][0] = re;
        ca.ptr[k][1] = im;
    }
    fftw_execute(inv.handle);

    std::vector<double> out(out_len);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = ra.ptr[i] * scale;
    return out;
}

}  // namespace cardioseis::detail
