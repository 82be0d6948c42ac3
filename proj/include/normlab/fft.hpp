#pragma once

#include <complex>
#include <vector>

namespace normlab::fft {

using cd = std::complex<double>;

/// In-place DFT of any length: X_k = sum_j x_j exp(-2*pi*i*j*k/n).
/// Power-of-two lengths run radix-2; everything else goes through Bluestein.
void forward(std::vector<cd>& data);

/// Unnormalized inverse: x_j = sum_k X_k exp(+2*pi*i*j*k/n), so
/// inverse(forward(x)) == n * x.
void inverse(std::vector<cd>& data);

}
