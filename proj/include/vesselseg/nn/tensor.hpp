#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vesselseg/errors.hpp"

namespace vseg::nn {

/// Dense NCHW tensor. Vectors and matrices use h == w == 1.
template <typename T>
struct Tensor {
    int n = 0, c = 0, h = 0, w = 0;
    std::vector<T> data;

    Tensor() = default;
    Tensor(int n_, int c_, int h_, int w_)
        : n(n_), c(c_), h(h_), w(w_), data(static_cast<size_t>(n_) * c_ * h_ * w_, T(0)) {}

    size_t numel() const { return data.size(); }
    size_t plane() const { return static_cast<size_t>(h) * w; }

    T& at(int in, int ic, int iy, int ix) {
        return data[((static_cast<size_t>(in) * c + ic) * h + iy) * w + ix];
    }
    T at(int in, int ic, int iy, int ix) const {
        return data[((static_cast<size_t>(in) * c + ic) * h + iy) * w + ix];
    }

    T* sample(int in) { return data.data() + static_cast<size_t>(in) * c * plane(); }
    const T* sample(int in) const { return data.data() + static_cast<size_t>(in) * c * plane(); }

    Tensor reshaped(int n_, int c_, int h_, int w_) const {
        if (static_cast<size_t>(n_) * c_ * h_ * w_ != numel())
            throw ShapeError("tensor reshape changes element count");
        Tensor out = *this;
        out.n = n_;
        out.c = c_;
        out.h = h_;
        out.w = w_;
        return out;
    }
};

template <typename T>
void check_finite(const Tensor<T>& t, const std::string& where) {
    for (T v : t.data)
        if (!std::isfinite(static_cast<double>(v)))
            throw NumericError("non-finite value after " + where);
}

}  // namespace vseg::nn
