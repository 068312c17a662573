#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

#include "pcg/error.hpp"

namespace pcg::detail {
namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using fftw_ptr = std::unique_ptr<T[], FftwFree>;

template <class T>
fftw_ptr<T> fftw_alloc(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
    if (p == nullptr) throw Error("fft: allocation failed");
    return fftw_ptr<T>(p);
}

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {
        if (plan_ == nullptr) throw Error("fft: planning failed");
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

std::vector<cplx> complex_transform(std::span<const cplx> x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    auto in = fftw_alloc<fftw_complex>(n);
    auto out = fftw_alloc<fftw_complex>(n);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign, FFTW_ESTIMATE);
    }
    Plan plan(raw);
    for (std::size_t i = 0; i < n; ++i) {
        in[i][0] = x[i].real();
        in[i][1] = x[i].imag();
    }
    plan.execute();
    std::vector<cplx> result(n);
    for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0], out[i][1]};
    return result;
}

}  // namespace

std::vector<cplx> fft(std::span<const cplx> x) { return complex_transform(x, FFTW_FORWARD); }

std::vector<cplx> ifft(std::span<const cplx> x) {
    auto y = complex_transform(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : y) v *= scale;
    return y;
}

std::vector<cplx> rfft(std::span<const double> x, std::size_t n) {
    if (n == 0) return {};
    auto in = fftw_alloc<double>(n);
    auto out = fftw_alloc<fftw_complex>(n / 2 + 1);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    }
    Plan plan(raw);
    const std::size_t m = std::min(n, x.size());
    std::copy_n(x.begin(), m, in.get());
    std::fill(in.get() + m, in.get() + n, 0.0);
    plan.execute();
    std::vector<cplx> result(n / 2 + 1);
    for (std::size_t i = 0; i < result.size(); ++i) result[i] = {out[i][0], out[i][1]};
    return result;
}

}  // namespace pcg::detail
