#include "tablegrid/error.hpp"

namespace tablegrid {

Error::Error(std::string module, const std::string& message)
    : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

MalformedHeader::MalformedHeader(const std::string& field)
    : Error("raster", "malformed header field '" + field + "'"), field_(field) {}

TruncatedPixelData::TruncatedPixelData(std::size_t expected, std::size_t actual)
    : Error("raster", "truncated pixel data: expected " + std::to_string(expected) +
                          " bytes, got " + std::to_string(actual)) {}

UnsupportedMaxval::UnsupportedMaxval(long maxval)
    : Error("raster", "unsupported maxval " + std::to_string(maxval) + " (only 255)") {}

NoContrast::NoContrast() : Error("binarize", "image has no contrast (single intensity)") {}

BlockTooLarge::BlockTooLarge(int block_size, int limit)
    : Error("binarize", "block size " + std::to_string(block_size) + " exceeds limit " +
                            std::to_string(limit) + " for this image") {}

NoTablesFound::NoTablesFound() : Error("tablegroup", "no table") {}

MalformedRow::MalformedRow(std::size_t line_no, const std::string& reason)
    : Error("ocrwords", "line " + std::to_string(line_no) + ": " + reason), line_no_(line_no) {}

SpecOverflow::SpecOverflow(const std::string& what) : Error("synth", what) {}

}  // namespace tablegrid
