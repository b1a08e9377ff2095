#ifndef GWT_FFT_HPP
#define GWT_FFT_HPP

#include <Eigen/Dense>

namespace gwt {

// Thin FFTW wrappers. Plans are created under a lock (FFTW planning is not
// thread-safe); execution is reentrant.
Eigen::VectorXcd fft(const Eigen::VectorXcd& x);
Eigen::VectorXcd ifft(const Eigen::VectorXcd& x);

}  // namespace gwt

#endif  // GWT_FFT_HPP
