#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "vesselseg/nn/gemm.hpp"
#include "vesselseg/nn/tensor.hpp"
#include "vesselseg/rng.hpp"

namespace vseg::nn {

/// Named view of one parameter (or state) vector and its gradient.
template <typename T>
struct ParamView {
    std::string name;
    std::vector<T>* value = nullptr;
    std::vector<T>* grad = nullptr;  // null for non-trainable state
    std::vector<int> shape;
};

template <typename T>
class Layer {
  public:
    explicit Layer(std::string name) : name_(std::move(name)) {}
    virtual ~Layer() = default;

    const std::string& name() const { return name_; }
    virtual Tensor<T> forward(const Tensor<T>& x, bool train, Rng* rng) = 0;
    virtual Tensor<T> backward(const Tensor<T>& dy) = 0;
    virtual std::vector<ParamView<T>> params() { return {}; }
    virtual std::vector<ParamView<T>> state() { return {}; }

  private:
    std::string name_;
};

// ---------------------------------------------------------------------------

/// 2-D convolution with odd kernel and same padding, NCHW, via per-sample
/// im2col + GEMM. Weight gradients accumulate over samples in fixed order
/// (chunked scratch slots), so the result is independent of the thread count.
template <typename T>
class Conv2d : public Layer<T> {
  public:
    Conv2d(std::string name, int in_channels, int out_channels, int kernel)
        : Layer<T>(std::move(name)),
          ci_(in_channels),
          co_(out_channels),
          k_(kernel),
          pad_(kernel / 2),
          weight_(static_cast<size_t>(co_) * ci_ * k_ * k_, T(0)),
          bias_(co_, T(0)),
          dweight_(weight_.size(), T(0)),
          dbias_(bias_.size(), T(0)) {
        if (kernel < 1 || kernel % 2 == 0)
            throw ConfigError("conv kernel must be odd and >= 1 for same padding");
    }

    void init(Rng& rng) {
        const double std_dev = std::sqrt(2.0 / (static_cast<double>(ci_) * k_ * k_));
        for (T& v : weight_) v = static_cast<T>(rng.normal() * std_dev);
        std::fill(bias_.begin(), bias_.end(), T(0));
    }

    Tensor<T> forward(const Tensor<T>& x, bool /*train*/, Rng*) override {
        if (x.c != ci_) throw ShapeError(this->name() + ": channel mismatch");
        x_ = x;
        Tensor<T> y(x.n, co_, x.h, x.w);
        const int hw = x.h * x.w;
        const int kk = ci_ * k_ * k_;
#pragma omp parallel
        {
            std::vector<T> col(static_cast<size_t>(kk) * hw);
#pragma omp for schedule(static)
            for (int b = 0; b < x.n; ++b) {
                im2col(x.sample(b), x.h, x.w, col.data());
                gemm_rm<T>(false, false, co_, hw, kk, T(1), weight_.data(), kk, col.data(),
                           hw, T(0), y.sample(b), hw);
                T* ys = y.sample(b);
                for (int oc = 0; oc < co_; ++oc) {
                    const T bv = bias_[oc];
                    T* row = ys + static_cast<size_t>(oc) * hw;
                    for (int i = 0; i < hw; ++i) row[i] += bv;
                }
            }
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        const Tensor<T>& x = x_;
        const int hw = x.h * x.w;
        const int kk = ci_ * k_ * k_;
        Tensor<T> dx(x.n, ci_, x.h, x.w);

        // dX: each sample independent
#pragma omp parallel
        {
            std::vector<T> dcol(static_cast<size_t>(kk) * hw);
#pragma omp for schedule(static)
            for (int b = 0; b < x.n; ++b) {
                gemm_rm<T>(true, false, kk, hw, co_, T(1), weight_.data(), kk,
                           dy.sample(b), hw, T(0), dcol.data(), hw);
                col2im(dcol.data(), x.h, x.w, dx.sample(b));
            }
        }

        // dW: per-sample partials into chunk slots, reduced in sample order
        constexpr int kChunk = 8;
        std::vector<std::vector<T>> slots(kChunk, std::vector<T>(weight_.size()));
        for (int base = 0; base < x.n; base += kChunk) {
            const int m = std::min(kChunk, x.n - base);
#pragma omp parallel
            {
                std::vector<T> col(static_cast<size_t>(kk) * hw);
#pragma omp for schedule(static)
                for (int j = 0; j < m; ++j) {
                    im2col(x.sample(base + j), x.h, x.w, col.data());
                    gemm_rm<T>(false, true, co_, kk, hw, T(1), dy.sample(base + j), hw,
                               col.data(), hw, T(0), slots[j].data(), kk);
                }
            }
            for (int j = 0; j < m; ++j)
                for (size_t i = 0; i < weight_.size(); ++i) dweight_[i] += slots[j][i];
        }

        // db: per-channel sums, channels split across threads
#pragma omp parallel for schedule(static)
        for (int oc = 0; oc < co_; ++oc) {
            T acc = T(0);
            for (int b = 0; b < x.n; ++b) {
                const T* row = dy.sample(b) + static_cast<size_t>(oc) * hw;
                for (int i = 0; i < hw; ++i) acc += row[i];
            }
            dbias_[oc] += acc;
        }
        return dx;
    }

    std::vector<ParamView<T>> params() override {
        return {{this->name() + ".weight", &weight_, &dweight_, {co_, ci_, k_, k_}},
                {this->name() + ".bias", &bias_, &dbias_, {co_}}};
    }

    int out_channels() const { return co_; }

  private:
    // col is (ci*k*k) x (h*w); zero padding outside the sample
    void im2col(const T* in, int h, int w, T* col) const {
        const int hw = h * w;
        for (int ic = 0; ic < ci_; ++ic) {
            const T* plane = in + static_cast<size_t>(ic) * hw;
            for (int ky = 0; ky < k_; ++ky) {
                for (int kx = 0; kx < k_; ++kx) {
                    T* dst = col + (static_cast<size_t>(ic) * k_ * k_ +
                                    static_cast<size_t>(ky) * k_ + kx) *
                                       hw;
                    for (int y = 0; y < h; ++y) {
                        const int sy = y + ky - pad_;
                        T* drow = dst + static_cast<size_t>(y) * w;
                        if (sy < 0 || sy >= h) {
                            std::fill(drow, drow + w, T(0));
                            continue;
                        }
                        const T* srow = plane + static_cast<size_t>(sy) * w;
                        const int shift = kx - pad_;
                        const int x0 = std::max(0, -shift);
                        const int x1 = std::min(w, w - shift);
                        std::fill(drow, drow + x0, T(0));
                        for (int x = x0; x < x1; ++x) drow[x] = srow[x + shift];
                        std::fill(drow + std::max(x0, x1), drow + w, T(0));
                    }
                }
            }
        }
    }

    void col2im(const T* col, int h, int w, T* out) const {
        const int hw = h * w;
        std::fill(out, out + static_cast<size_t>(ci_) * hw, T(0));
        for (int ic = 0; ic < ci_; ++ic) {
            T* plane = out + static_cast<size_t>(ic) * hw;
            for (int ky = 0; ky < k_; ++ky) {
                for (int kx = 0; kx < k_; ++kx) {
                    const T* src = col + (static_cast<size_t>(ic) * k_ * k_ +
                                          static_cast<size_t>(ky) * k_ + kx) *
                                             hw;
                    for (int y = 0; y < h; ++y) {
                        const int sy = y + ky - pad_;
                        if (sy < 0 || sy >= h) continue;
                        const int shift = kx - pad_;
                        const int x0 = std::max(0, -shift);
                        const int x1 = std::min(w, w - shift);
                        T* drow = plane + static_cast<size_t>(sy) * w + shift;
                        const T* srow = src + static_cast<size_t>(y) * w;
                        for (int x = x0; x < x1; ++x) drow[x] += srow[x];
                    }
                }
            }
        }
    }

    int ci_, co_, k_, pad_;
    std::vector<T> weight_, bias_, dweight_, dbias_;
    Tensor<T> x_;
};

// ---------------------------------------------------------------------------

/// Batch normalization over (n, h, w) per channel. Training uses batch
/// statistics (biased variance) and updates the running stats; inference uses
/// the running stats only, so results are independent of batch composition.
template <typename T>
class BatchNorm : public Layer<T> {
  public:
    BatchNorm(std::string name, int channels, T momentum = T(0.1), T eps = T(1e-5))
        : Layer<T>(std::move(name)),
          c_(channels),
          momentum_(momentum),
          eps_(eps),
          scale_(channels, T(1)),
          shift_(channels, T(0)),
          dscale_(channels, T(0)),
          dshift_(channels, T(0)),
          running_mean_(channels, T(0)),
          running_var_(channels, T(1)) {}

    Tensor<T> forward(const Tensor<T>& x, bool train, Rng*) override {
        if (x.c != c_) throw ShapeError(this->name() + ": channel mismatch");
        Tensor<T> y(x.n, x.c, x.h, x.w);
        const size_t plane = x.plane();
        if (train) {
            x_ = x;
            mean_.assign(c_, T(0));
            var_.assign(c_, T(0));
            const T m = static_cast<T>(static_cast<double>(x.n) * plane);
#pragma omp parallel for schedule(static)
            for (int ch = 0; ch < c_; ++ch) {
                T sum = T(0);
                for (int b = 0; b < x.n; ++b) {
                    const T* p = x.sample(b) + ch * plane;
                    for (size_t i = 0; i < plane; ++i) sum += p[i];
                }
                const T mu = sum / m;
                T sq = T(0);
                for (int b = 0; b < x.n; ++b) {
                    const T* p = x.sample(b) + ch * plane;
                    for (size_t i = 0; i < plane; ++i) sq += (p[i] - mu) * (p[i] - mu);
                }
                const T var = sq / m;
                mean_[ch] = mu;
                var_[ch] = var;
                running_mean_[ch] = (T(1) - momentum_) * running_mean_[ch] + momentum_ * mu;
                running_var_[ch] = (T(1) - momentum_) * running_var_[ch] + momentum_ * var;
                const T inv = T(1) / std::sqrt(var + eps_);
                for (int b = 0; b < x.n; ++b) {
                    const T* p = x.sample(b) + ch * plane;
                    T* q = y.sample(b) + ch * plane;
                    for (size_t i = 0; i < plane; ++i)
                        q[i] = (p[i] - mu) * inv * scale_[ch] + shift_[ch];
                }
            }
        } else {
#pragma omp parallel for schedule(static)
            for (int ch = 0; ch < c_; ++ch) {
                const T inv = T(1) / std::sqrt(running_var_[ch] + eps_);
                const T a = scale_[ch] * inv;
                const T b0 = shift_[ch] - running_mean_[ch] * a;
                for (int b = 0; b < x.n; ++b) {
                    const T* p = x.sample(b) + ch * plane;
                    T* q = y.sample(b) + ch * plane;
                    for (size_t i = 0; i < plane; ++i) q[i] = p[i] * a + b0;
                }
            }
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        const Tensor<T>& x = x_;
        const size_t plane = x.plane();
        const T m = static_cast<T>(static_cast<double>(x.n) * plane);
        Tensor<T> dx(x.n, x.c, x.h, x.w);
#pragma omp parallel for schedule(static)
        for (int ch = 0; ch < c_; ++ch) {
            const T mu = mean_[ch], inv = T(1) / std::sqrt(var_[ch] + eps_);
            T sum_dy = T(0), sum_dy_xhat = T(0);
            for (int b = 0; b < x.n; ++b) {
                const T* dyp = dy.sample(b) + ch * plane;
                const T* xp = x.sample(b) + ch * plane;
                for (size_t i = 0; i < plane; ++i) {
                    sum_dy += dyp[i];
                    sum_dy_xhat += dyp[i] * (xp[i] - mu) * inv;
                }
            }
            dscale_[ch] += sum_dy_xhat;
            dshift_[ch] += sum_dy;
            const T g = scale_[ch];
            for (int b = 0; b < x.n; ++b) {
                const T* dyp = dy.sample(b) + ch * plane;
                const T* xp = x.sample(b) + ch * plane;
                T* dxp = dx.sample(b) + ch * plane;
                for (size_t i = 0; i < plane; ++i) {
                    const T xhat = (xp[i] - mu) * inv;
                    dxp[i] = g * inv * (dyp[i] - sum_dy / m - xhat * sum_dy_xhat / m);
                }
            }
        }
        return dx;
    }

    std::vector<ParamView<T>> params() override {
        return {{this->name() + ".scale", &scale_, &dscale_, {c_}},
                {this->name() + ".shift", &shift_, &dshift_, {c_}}};
    }
    std::vector<ParamView<T>> state() override {
        return {{this->name() + ".running_mean", &running_mean_, nullptr, {c_}},
                {this->name() + ".running_var", &running_var_, nullptr, {c_}}};
    }

  private:
    int c_;
    T momentum_, eps_;
    std::vector<T> scale_, shift_, dscale_, dshift_;
    std::vector<T> running_mean_, running_var_;
    std::vector<T> mean_, var_;
    Tensor<T> x_;
};

// ---------------------------------------------------------------------------

template <typename T>
class ReLU : public Layer<T> {
  public:
    using Layer<T>::Layer;

    Tensor<T> forward(const Tensor<T>& x, bool /*train*/, Rng*) override {
        mask_.assign(x.numel(), 0);
        Tensor<T> y = x;
        const std::int64_t n = static_cast<std::int64_t>(x.numel());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            if (y.data[i] > T(0))
                mask_[i] = 1;
            else
                y.data[i] = T(0);
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        Tensor<T> dx = dy;
        const std::int64_t n = static_cast<std::int64_t>(dy.numel());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            if (!mask_[i]) dx.data[i] = T(0);
        return dx;
    }

  private:
    std::vector<std::uint8_t> mask_;
};

// ---------------------------------------------------------------------------

/// 2x2 max pooling with stride 2. Ties resolve to the first maximum in scan
/// order, which keeps the backward scatter deterministic.
template <typename T>
class MaxPool2 : public Layer<T> {
  public:
    using Layer<T>::Layer;

    Tensor<T> forward(const Tensor<T>& x, bool /*train*/, Rng*) override {
        if (x.h < 2 || x.w < 2) throw ShapeError(this->name() + ": input too small to pool");
        in_h_ = x.h;
        in_w_ = x.w;
        in_n_ = x.n;
        in_c_ = x.c;
        const int oh = x.h / 2, ow = x.w / 2;
        Tensor<T> y(x.n, x.c, oh, ow);
        argmax_.resize(y.numel());
        const int nc = x.n * x.c;
#pragma omp parallel for schedule(static)
        for (int p = 0; p < nc; ++p) {
            const T* plane = x.data.data() + static_cast<size_t>(p) * x.h * x.w;
            T* out = y.data.data() + static_cast<size_t>(p) * oh * ow;
            std::uint32_t* amax = argmax_.data() + static_cast<size_t>(p) * oh * ow;
            for (int y0 = 0; y0 < oh; ++y0) {
                for (int x0 = 0; x0 < ow; ++x0) {
                    T best = plane[(2 * y0) * x.w + 2 * x0];
                    std::uint32_t bidx = (2 * y0) * x.w + 2 * x0;
                    for (int dy = 0; dy < 2; ++dy) {
                        for (int dx = 0; dx < 2; ++dx) {
                            const std::uint32_t idx = (2 * y0 + dy) * x.w + 2 * x0 + dx;
                            if (plane[idx] > best) {
                                best = plane[idx];
                                bidx = idx;
                            }
                        }
                    }
                    out[y0 * ow + x0] = best;
                    amax[y0 * ow + x0] = bidx;
                }
            }
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        Tensor<T> dx(in_n_, in_c_, in_h_, in_w_);
        const int oh = dy.h, ow = dy.w;
        const int nc = dy.n * dy.c;
#pragma omp parallel for schedule(static)
        for (int p = 0; p < nc; ++p) {
            const T* dyp = dy.data.data() + static_cast<size_t>(p) * oh * ow;
            T* dxp = dx.data.data() + static_cast<size_t>(p) * in_h_ * in_w_;
            const std::uint32_t* amax = argmax_.data() + static_cast<size_t>(p) * oh * ow;
            for (int i = 0; i < oh * ow; ++i) dxp[amax[i]] += dyp[i];
        }
        return dx;
    }

  private:
    std::vector<std::uint32_t> argmax_;
    int in_h_ = 0, in_w_ = 0, in_n_ = 0, in_c_ = 0;
};

// ---------------------------------------------------------------------------

/// Inverted dropout: survivors scale by 1/(1-rate) during training,
/// inference is the identity. freeze_mask() pins the current mask for
/// finite-difference checks.
template <typename T>
class Dropout : public Layer<T> {
  public:
    Dropout(std::string name, double rate) : Layer<T>(std::move(name)), rate_(rate) {
        if (rate < 0.0 || rate >= 1.0) throw ConfigError("dropout rate must be in [0,1)");
    }

    Tensor<T> forward(const Tensor<T>& x, bool train, Rng* rng) override {
        if (!train || rate_ == 0.0) {
            mask_.clear();
            return x;
        }
        if (!frozen_ || mask_.size() != x.numel()) {
            mask_.resize(x.numel());
            for (size_t i = 0; i < mask_.size(); ++i)
                mask_[i] = rng->real01() >= rate_ ? 1 : 0;
        }
        const T scale = static_cast<T>(1.0 / (1.0 - rate_));
        Tensor<T> y = x;
        const std::int64_t n = static_cast<std::int64_t>(x.numel());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) y.data[i] = mask_[i] ? y.data[i] * scale : T(0);
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        if (mask_.empty()) return dy;
        const T scale = static_cast<T>(1.0 / (1.0 - rate_));
        Tensor<T> dx = dy;
        const std::int64_t n = static_cast<std::int64_t>(dy.numel());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) dx.data[i] = mask_[i] ? dx.data[i] * scale : T(0);
        return dx;
    }

    void freeze_mask(bool frozen) { frozen_ = frozen; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }

  private:
    double rate_;
    bool frozen_ = false;
    std::vector<std::uint8_t> mask_;
};

// ---------------------------------------------------------------------------

template <typename T>
class Flatten : public Layer<T> {
  public:
    using Layer<T>::Layer;

    Tensor<T> forward(const Tensor<T>& x, bool /*train*/, Rng*) override {
        c_ = x.c;
        h_ = x.h;
        w_ = x.w;
        return x.reshaped(x.n, x.c * x.h * x.w, 1, 1);
    }
    Tensor<T> backward(const Tensor<T>& dy) override { return dy.reshaped(dy.n, c_, h_, w_); }

  private:
    int c_ = 0, h_ = 0, w_ = 0;
};

// ---------------------------------------------------------------------------

/// Fully connected layer on (n, features) tensors.
template <typename T>
class Dense : public Layer<T> {
  public:
    Dense(std::string name, int in_features, int out_features)
        : Layer<T>(std::move(name)),
          in_(in_features),
          out_(out_features),
          weight_(static_cast<size_t>(out_features) * in_features, T(0)),
          bias_(out_features, T(0)),
          dweight_(weight_.size(), T(0)),
          dbias_(bias_.size(), T(0)) {}

    void init(Rng& rng) {
        const double std_dev = std::sqrt(2.0 / static_cast<double>(in_));
        for (T& v : weight_) v = static_cast<T>(rng.normal() * std_dev);
        std::fill(bias_.begin(), bias_.end(), T(0));
    }

    Tensor<T> forward(const Tensor<T>& x, bool /*train*/, Rng*) override {
        if (x.c != in_ || x.h != 1 || x.w != 1)
            throw ShapeError(this->name() + ": expected flattened input of " +
                             std::to_string(in_) + " features");
        x_ = x;
        Tensor<T> y(x.n, out_, 1, 1);
        // y = x * W^T + b, samples split across threads
#pragma omp parallel for schedule(static)
        for (int b = 0; b < x.n; ++b) {
            gemm_rm<T>(false, true, 1, out_, in_, T(1), x.sample(b), in_, weight_.data(), in_,
                       T(0), y.sample(b), out_);
            for (int o = 0; o < out_; ++o) y.sample(b)[o] += bias_[o];
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        const Tensor<T>& x = x_;
        Tensor<T> dx(x.n, in_, 1, 1);
#pragma omp parallel for schedule(static)
        for (int b = 0; b < x.n; ++b)
            gemm_rm<T>(false, false, 1, in_, out_, T(1), dy.sample(b), out_, weight_.data(),
                       in_, T(0), dx.sample(b), in_);

        // dW = dy^T x as one gemm per output-row block, batch loop inside BLAS
        const int rows = out_;
#pragma omp parallel for schedule(static)
        for (int o = 0; o < rows; ++o) {
            // dW[o,:] += sum_b dy[b,o] * x[b,:]
            T* wrow = dweight_.data() + static_cast<size_t>(o) * in_;
            T acc_b = T(0);
            for (int b = 0; b < x.n; ++b) {
                const T g = dy.sample(b)[o];
                acc_b += g;
                const T* xb = x.sample(b);
                for (int i = 0; i < in_; ++i) wrow[i] += g * xb[i];
            }
            dbias_[o] += acc_b;
        }
        return dx;
    }

    std::vector<ParamView<T>> params() override {
        return {{this->name() + ".weight", &weight_, &dweight_, {out_, in_}},
                {this->name() + ".bias", &bias_, &dbias_, {out_}}};
    }

    int out_features() const { return out_; }

  private:
    int in_, out_;
    std::vector<T> weight_, bias_, dweight_, dbias_;
    Tensor<T> x_;
};

}  // namespace vseg::nn
