#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracles.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/raster.hpp"

using namespace tablegrid;

namespace {

std::vector<std::uint8_t> bytes(const std::string& header, std::vector<std::uint8_t> raster) {
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), raster.begin(), raster.end());
    return out;
}

}  // namespace

TEST(LoadImage, PgmCopiesPixels) {
    const auto img = load_image(bytes("P5 2 1 255\n", {0, 255}));
    EXPECT_EQ(img.width(), 2);
    EXPECT_EQ(img.height(), 1);
    EXPECT_EQ(img.at(0, 0), 0);
    EXPECT_EQ(img.at(1, 0), 255);
}

TEST(LoadImage, PpmWhiteStaysWhite) {
    const auto img = load_image(bytes("P6\n1 1\n255\n", {255, 255, 255}));
    EXPECT_EQ(img.at(0, 0), 255);
}

TEST(LoadImage, PpmPureRedUsesLuma) {
    // round(0.299 * 255) = round(76.245)
    const auto img = load_image(bytes("P6\n1 1\n255\n", {255, 0, 0}));
    EXPECT_EQ(img.at(0, 0), 76);
}

TEST(LoadImage, HeaderCommentsAndWhitespace) {
    const auto img = load_image(bytes("P5\n# scanner output\n 3\t# width\n2\n255\n", {1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(img.width(), 3);
    EXPECT_EQ(img.height(), 2);
    EXPECT_EQ(img.at(2, 1), 6);
}

TEST(LoadImage, RejectsBadMagic) {
    try {
        load_image(bytes("P2 1 1 255\n", {0}));
        FAIL();
    } catch (const MalformedHeader& e) {
        EXPECT_EQ(e.field(), "magic");
    }
}

TEST(LoadImage, RejectsMissingHeight) {
    try {
        load_image(bytes("P5 4 ", {}));
        FAIL();
    } catch (const MalformedHeader& e) {
        EXPECT_EQ(e.field(), "height");
    }
}

TEST(LoadImage, RejectsZeroWidth) {
    EXPECT_THROW(load_image(bytes("P5 0 1 255\n", {})), MalformedHeader);
}

TEST(LoadImage, RejectsSixteenBitMaxval) {
    EXPECT_THROW(load_image(bytes("P5 1 1 65535\n", {0, 0})), UnsupportedMaxval);
    EXPECT_THROW(load_image(bytes("P5 1 1 15\n", {0})), UnsupportedMaxval);
}

TEST(LoadImage, RejectsTruncatedRaster) {
    EXPECT_THROW(load_image(bytes("P5 2 2 255\n", {1, 2, 3})), TruncatedPixelData);
    EXPECT_THROW(load_image(bytes("P6 1 1 255\n", {1, 2})), TruncatedPixelData);
}

TEST(LoadImage, PgmEncodeRoundTrip) {
    std::mt19937_64 rng(7);
    std::vector<std::uint8_t> px(35);
    for (auto& p : px) p = static_cast<std::uint8_t>(rng());
    const GrayImage img(7, 5, px);
    EXPECT_EQ(load_image(encode_pgm(img)), img);
}

TEST(Luma, MonotoneAndExactOnGray) {
    for (int v = 0; v < 256; ++v) {
        const auto u = static_cast<std::uint8_t>(v);
        EXPECT_EQ(luma(u, u, u), u);
    }
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const auto r = static_cast<std::uint8_t>(rng());
        const auto g = static_cast<std::uint8_t>(rng());
        const auto b = static_cast<std::uint8_t>(rng());
        if (r < 255) EXPECT_LE(luma(r, g, b), luma(r + 1, g, b));
        if (g < 255) EXPECT_LE(luma(r, g, b), luma(r, g + 1, b));
        if (b < 255) EXPECT_LE(luma(r, g, b), luma(r, g, b + 1));
    }
}

TEST(Histogram, CountsTwoPixels) {
    const auto h = histogram(GrayImage(2, 1, {0, 255}));
    EXPECT_EQ(h.bins[0], 1u);
    EXPECT_EQ(h.bins[255], 1u);
    EXPECT_EQ(h.total, 2u);
}

TEST(Histogram, ConstantImage) {
    const auto h = histogram(GrayImage(3, 3, std::uint8_t{7}));
    for (int i = 0; i < 256; ++i) EXPECT_EQ(h.bins[i], i == 7 ? 9u : 0u);
}

TEST(Histogram, ConservesPixelCountAndProbabilitySumsToOne) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 40);
        const int h = 1 + static_cast<int>(rng() % 40);
        GrayImage img(w, h);
        for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng());
        const auto hist = histogram(img);
        std::uint64_t sum = 0;
        double p = 0;
        for (int i = 0; i < 256; ++i) {
            sum += hist.bins[i];
            p += hist.probability(i);
        }
        EXPECT_EQ(sum, static_cast<std::uint64_t>(w * h));
        EXPECT_NEAR(p, 1.0, 1e-12);
    }
}

TEST(Invert, AllBackgroundBecomesForeground) {
    EXPECT_EQ(invert(BinaryImage(2, 2)), BinaryImage(2, 2, true));
}

TEST(Invert, SinglePixel) {
    BinaryImage img(3, 3);
    img.set(0, 0);
    const auto inv = invert(img);
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 3; ++x) EXPECT_EQ(inv.at(x, y), !(x == 0 && y == 0));
    }
}

TEST(Invert, Involution) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto img = oracle::random_binary(rng, 1 + i % 17, 1 + i % 13, 0.4);
        EXPECT_EQ(invert(invert(img)), img);
    }
}

TEST(PadTranslate, PadThenTranslateBackMatchesCrop) {
    BinaryImage img(4, 3);
    img.set(1, 1);
    img.set(3, 2);
    const auto padded = pad(img, 2);
    EXPECT_EQ(padded.width(), 8);
    EXPECT_EQ(padded.height(), 7);
    EXPECT_TRUE(padded.at(3, 3));
    EXPECT_TRUE(padded.at(5, 4));
    EXPECT_EQ(padded.count(), 2u);
    const auto moved = translate(img, -1, 0);
    EXPECT_TRUE(moved.at(0, 1));
    EXPECT_TRUE(moved.at(2, 2));
    EXPECT_EQ(translate(img, 10, 0).count(), 0u);
}

TEST(GrayImage, RejectsMismatchedPixels) {
    EXPECT_THROW(GrayImage(2, 2, std::vector<std::uint8_t>(3)), InvalidArgument);
    EXPECT_THROW(GrayImage(0, 2), InvalidArgument);
}
