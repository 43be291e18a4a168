#include <gtest/gtest.h>

#include <random>
#include <string>

#include "tablegrid/error.hpp"
#include "tablegrid/ocrwords.hpp"

using namespace tablegrid;

namespace {

std::string with_header(const std::string& rows) {
    return std::string(kOcrTsvHeader) + "\n" + rows;
}

}  // namespace

TEST(ParseOcrTsv, WordRow) {
    const auto words = parse_ocr_tsv(with_header("5\t1\t1\t1\t1\t1\t100\t50\t40\t20\t96\tApple\n"));
    ASSERT_EQ(words.size(), 1u);
    const auto& w = words[0];
    EXPECT_EQ(w.left, 100);
    EXPECT_EQ(w.top, 50);
    EXPECT_EQ(w.width, 40);
    EXPECT_EQ(w.height, 20);
    EXPECT_DOUBLE_EQ(w.conf, 96);
    EXPECT_EQ(w.text, "Apple");
    EXPECT_DOUBLE_EQ(w.x_mean(), 120);
    EXPECT_DOUBLE_EQ(w.y_mean(), 60);
}

TEST(ParseOcrTsv, SkipsLayoutLevelsAndNegativeConfidence) {
    const auto words = parse_ocr_tsv(with_header(
        "4\t1\t1\t1\t1\t0\t100\t50\t400\t20\t-1\t\n"
        "5\t1\t1\t1\t1\t1\t100\t50\t40\t20\t-1\tghost\n"
        "5\t1\t1\t1\t1\t2\t150\t50\t40\t20\t88.5\tPlum\r\n"));
    ASSERT_EQ(words.size(), 1u);
    EXPECT_EQ(words[0].text, "Plum");
    EXPECT_DOUBLE_EQ(words[0].conf, 88.5);
}

TEST(ParseOcrTsv, ElevenColumnsIsMalformed) {
    try {
        parse_ocr_tsv(with_header("5\t1\t1\t1\t1\t1\t100\t50\t40\t20\t96\n"));
        FAIL();
    } catch (const MalformedRow& e) {
        EXPECT_EQ(e.line_no(), 2u);
    }
}

TEST(ParseOcrTsv, RejectsMissingHeaderAndBadNumbers) {
    EXPECT_THROW(parse_ocr_tsv("5\t1\t1\t1\t1\t1\t100\t50\t40\t20\t96\tApple\n"), MalformedRow);
    EXPECT_THROW(parse_ocr_tsv(with_header("5\t1\t1\t1\t1\t1\tx\t50\t40\t20\t96\tA\n")), MalformedRow);
    EXPECT_THROW(parse_ocr_tsv(with_header("5\t1\t1\t1\t1\t1\t10\t50\t0\t20\t96\tA\n")), MalformedRow);
    EXPECT_TRUE(parse_ocr_tsv("").empty());
    EXPECT_TRUE(parse_ocr_tsv(with_header("")).empty());
}

TEST(FilterConfidence, DropsLowAndBlank) {
    OcrWord hi;
    hi.width = hi.height = 1;
    hi.conf = 96;
    hi.text = "a";
    OcrWord lo = hi;
    lo.conf = 12;
    OcrWord blank = hi;
    blank.text = "   ";
    const auto kept = filter_confidence({hi, lo, blank}, 30);
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_DOUBLE_EQ(kept[0].conf, 96);
    EXPECT_EQ(filter_confidence({hi, lo, blank}, 0).size(), 2u);
    EXPECT_THROW(filter_confidence({}, 101), InvalidArgument);
}

TEST(FilterConfidence, OutputIsSubsequence) {
    std::mt19937_64 rng(3);
    std::vector<OcrWord> words(200);
    for (std::size_t i = 0; i < words.size(); ++i) {
        words[i].word_num = static_cast<int>(i);
        words[i].width = words[i].height = 5;
        words[i].conf = static_cast<double>(rng() % 101);
        words[i].text = rng() % 7 == 0 ? " " : "w";
    }
    const auto kept = filter_confidence(words, 50);
    std::size_t j = 0;
    for (const auto& k : kept) {
        while (j < words.size() && !(words[j] == k)) ++j;
        ASSERT_LT(j, words.size());
        ++j;
        EXPECT_GE(k.conf, 50);
    }
}

TEST(OcrTsv, RoundTripIsLossless) {
    std::mt19937_64 rng(8);
    std::vector<OcrWord> words;
    for (int i = 0; i < 100; ++i) {
        OcrWord w;
        w.page_num = 1;
        w.block_num = static_cast<int>(rng() % 5);
        w.par_num = static_cast<int>(rng() % 3);
        w.line_num = static_cast<int>(rng() % 9);
        w.word_num = i;
        w.left = static_cast<int>(rng() % 2000);
        w.top = static_cast<int>(rng() % 2000);
        w.width = 1 + static_cast<int>(rng() % 300);
        w.height = 1 + static_cast<int>(rng() % 60);
        w.conf = static_cast<double>(rng() % 100000) / 1000.0;
        w.text = "w" + std::to_string(rng() % 1000) + (i % 3 ? "" : "$");
        words.push_back(w);
    }
    EXPECT_EQ(parse_ocr_tsv(to_ocr_tsv(words)), words);
}

TEST(OcrWordTest, CenterLiesInBox) {
    OcrWord w;
    w.left = 3;
    w.top = 7;
    w.width = 5;
    w.height = 1;
    EXPECT_DOUBLE_EQ(w.x_mean(), 5.5);
    EXPECT_DOUBLE_EQ(w.y_mean(), 7.5);
}
