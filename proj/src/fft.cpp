#include "gwt/fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace gwt {
namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

Eigen::VectorXcd transform(const Eigen::VectorXcd& x, int sign) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXcd y(n);
    if (n == 0) return y;
    auto* in = reinterpret_cast<fftw_complex*>(const_cast<Eigen::dcomplex*>(x.data()));
    auto* out = reinterpret_cast<fftw_complex*>(y.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    if (sign == FFTW_BACKWARD) y /= static_cast<double>(n);
    return y;
}

}  // namespace

Eigen::VectorXcd fft(const Eigen::VectorXcd& x) { return transform(x, FFTW_FORWARD); }

Eigen::VectorXcd ifft(const Eigen::VectorXcd& x) { return transform(x, FFTW_BACKWARD); }

}  // namespace gwt
