#pragma once

#include <array>
#include <cstddef>

namespace gordon {

/// One classical fourth-order Runge–Kutta step for y' = f(t, y).
template <std::size_t N, class Rhs>
std::array<double, N> rk4_step(const Rhs& f, double t, const std::array<double, N>& y, double h) {
    auto axpy = [](const std::array<double, N>& a, const std::array<double, N>& b, double s) {
        std::array<double, N> r{};
        for (std::size_t k = 0; k < N; ++k) {
            r[k] = a[k] + s * b[k];
        }
        return r;
    };
    const auto k1 = f(t, y);
    const auto k2 = f(t + 0.5 * h, axpy(y, k1, 0.5 * h));
    const auto k3 = f(t + 0.5 * h, axpy(y, k2, 0.5 * h));
    const auto k4 = f(t + h, axpy(y, k3, h));
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) {
        out[k] = y[k] + h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    return out;
}

}  // namespace gordon
