#pragma once

#include <cstdint>
#include <vector>

#include "tablegrid/raster.hpp"

namespace tablegrid {

struct OtsuResult {
    int threshold = 0;  ///< class 1 holds intensities < threshold
    double within_class_variance = 0.0;
    double between_class_variance = 0.0;
    double total_variance = 0.0;
};

enum class Polarity {
    DarkForeground,   ///< ink (dark) pixels become foreground
    LightForeground,  ///< complement of DarkForeground
};

struct AdaptiveParams {
    int block_size = 199;
    double offset_c = 40.0;

    /// 0.3 * ((block_size - 1) / 2 - 1) + 0.8
    double gaussian_sigma() const noexcept;
};

/// Global Otsu threshold: the smallest t in [1, 255] maximizing the
/// between-class variance w1*w2*(mu1 - mu2)^2. Throws NoContrast when fewer
/// than two intensities are populated.
OtsuResult otsu_threshold(const Histogram& hist);

BinaryImage apply_threshold(const GrayImage& img, int threshold, Polarity polarity);

/// Fixed-point 1-D Gaussian weights of length `block_size` summing to exactly
/// kGaussianScale. The 2-D window weight is the outer product, so windowed
/// sums are exact integers regardless of evaluation order.
inline constexpr std::int64_t kGaussianScale = 1 << 16;
std::vector<std::int64_t> gaussian_weights(const AdaptiveParams& params);

/// Locally adaptive threshold against a Gaussian-weighted window mean m(p);
/// dark-foreground marks p when value < m(p) - C. Windows are extended by edge
/// replication.
BinaryImage adaptive_gaussian(const GrayImage& img, const AdaptiveParams& params,
                              Polarity polarity);

}  // namespace tablegrid
