#include "tablegrid/binarize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tablegrid/error.hpp"

namespace tablegrid {

double AdaptiveParams::gaussian_sigma() const noexcept {
    return 0.3 * ((block_size - 1) * 0.5 - 1.0) + 0.8;
}

OtsuResult otsu_threshold(const Histogram& hist) {
    if (hist.total == 0) throw NoContrast();
    const auto populated = std::count_if(hist.bins.begin(), hist.bins.end(),
                                         [](std::uint64_t c) { return c != 0; });
    if (populated < 2) throw NoContrast();

    using real = long double;
    const real total = static_cast<real>(hist.total);
    real mean_total = 0;
    for (int i = 0; i < 256; ++i) mean_total += i * (static_cast<real>(hist.bins[i]) / total);

    // Running class-1 mass and first moment over intensities [0, t).
    real w1 = 0;
    real m1 = 0;
    real best = -1;
    int best_t = 1;
    for (int t = 1; t < 256; ++t) {
        const real p = static_cast<real>(hist.bins[t - 1]) / total;
        w1 += p;
        m1 += (t - 1) * p;
        const real w2 = 1 - w1;
        if (w1 <= 0 || w2 <= 0) continue;
        const real mu1 = m1 / w1;
        const real mu2 = (mean_total - m1) / w2;
        const real between = w1 * w2 * (mu1 - mu2) * (mu1 - mu2);
        // Accumulation error must not split exact ties; the smallest t wins.
        if (between > best * (1 + 1e-12L) + 1e-15L) {
            best = between;
            best_t = t;
        }
    }

    OtsuResult result;
    result.threshold = best_t;
    real n1 = 0, s1 = 0, n2 = 0, s2 = 0;
    for (int i = 0; i < 256; ++i) {
        const real c = static_cast<real>(hist.bins[i]);
        if (i < best_t) {
            n1 += c;
            s1 += c * i;
        } else {
            n2 += c;
            s2 += c * i;
        }
    }
    const real mu1 = s1 / n1;
    const real mu2 = s2 / n2;
    real var1 = 0, var2 = 0, var_total = 0;
    for (int i = 0; i < 256; ++i) {
        const real c = static_cast<real>(hist.bins[i]);
        if (c == 0) continue;
        var_total += c * (i - mean_total) * (i - mean_total);
        if (i < best_t) {
            var1 += c * (i - mu1) * (i - mu1);
        } else {
            var2 += c * (i - mu2) * (i - mu2);
        }
    }
    const real w1_best = n1 / total;
    const real w2_best = n2 / total;
    result.within_class_variance = static_cast<double>((var1 + var2) / total);
    result.between_class_variance =
        static_cast<double>(w1_best * w2_best * (mu1 - mu2) * (mu1 - mu2));
    result.total_variance = static_cast<double>(var_total / total);
    return result;
}

BinaryImage apply_threshold(const GrayImage& img, int threshold, Polarity polarity) {
    if (threshold < 1 || threshold > 255) {
        throw InvalidArgument("binarize", "threshold must be in [1, 255]");
    }
    const bool dark = polarity == Polarity::DarkForeground;
    BinaryImage out(img.width(), img.height());
    auto src = img.pixels();
    auto dst = out.bits();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const bool below = src[i] < threshold;
        dst[i] = (below == dark) ? 1 : 0;
    }
    return out;
}

std::vector<std::int64_t> gaussian_weights(const AdaptiveParams& params) {
    if (params.block_size < 3 || params.block_size % 2 == 0) {
        throw InvalidArgument("binarize", "block size must be odd and >= 3");
    }
    const int radius = params.block_size / 2;
    const double sigma = params.gaussian_sigma();
    std::vector<double> g(params.block_size);
    for (int i = 0; i < params.block_size; ++i) {
        const double x = i - radius;
        g[i] = std::exp(-(x * x) / (2.0 * sigma * sigma));
    }
    const double sum = std::accumulate(g.begin(), g.end(), 0.0);
    std::vector<std::int64_t> w(params.block_size);
    for (int i = 0; i < params.block_size; ++i) {
        w[i] = std::llround(g[i] / sum * static_cast<double>(kGaussianScale));
    }
    const std::int64_t drift = kGaussianScale - std::accumulate(w.begin(), w.end(), std::int64_t{0});
    w[radius] += drift;
    return w;
}

BinaryImage adaptive_gaussian(const GrayImage& img, const AdaptiveParams& params,
                              Polarity polarity) {
    const int limit = 2 * std::max(img.width(), img.height()) + 1;
    if (params.block_size > limit) throw BlockTooLarge(params.block_size, limit);
    const auto weights = gaussian_weights(params);
    const int radius = params.block_size / 2;
    const int w = img.width();
    const int h = img.height();

    // Horizontal pass over an edge-replicated row.
    std::vector<std::int64_t> horiz(static_cast<std::size_t>(w) * h);
    std::vector<std::int64_t> row(static_cast<std::size_t>(w + 2 * radius));
    for (int y = 0; y < h; ++y) {
        for (int x = -radius; x < w + radius; ++x) {
            row[x + radius] = img.at(std::clamp(x, 0, w - 1), y);
        }
        std::int64_t* out = horiz.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            std::int64_t acc = 0;
            const std::int64_t* src = row.data() + x;
            for (int k = 0; k < params.block_size; ++k) acc += weights[k] * src[k];
            out[x] = acc;
        }
    }

    // Vertical pass; sums are exact integers scaled by kGaussianScale^2.
    const double scale = static_cast<double>(kGaussianScale) * static_cast<double>(kGaussianScale);
    const bool dark = polarity == Polarity::DarkForeground;
    BinaryImage out(w, h);
    std::vector<std::int64_t> acc(w);
    for (int y = 0; y < h; ++y) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int k = 0; k < params.block_size; ++k) {
            const int sy = std::clamp(y + k - radius, 0, h - 1);
            const std::int64_t* src = horiz.data() + static_cast<std::size_t>(sy) * w;
            const std::int64_t wk = weights[k];
            for (int x = 0; x < w; ++x) acc[x] += wk * src[x];
        }
        for (int x = 0; x < w; ++x) {
            const double mean = static_cast<double>(acc[x]) / scale;
            const bool below = static_cast<double>(img.at(x, y)) < mean - params.offset_c;
            if (below == dark) out.set(x, y);
        }
    }
    return out;
}

}  // namespace tablegrid
