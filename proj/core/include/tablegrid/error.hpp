#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tablegrid {

/// Base class for every error raised by the library. `module()` names the
/// pipeline stage that raised it and is prefixed to `what()`.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message);

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

class InvalidArgument : public Error {
public:
    InvalidArgument(std::string module, const std::string& message)
        : Error(std::move(module), message) {}
};

// raster

class MalformedHeader : public Error {
public:
    explicit MalformedHeader(const std::string& field);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class TruncatedPixelData : public Error {
public:
    TruncatedPixelData(std::size_t expected, std::size_t actual);
};

class UnsupportedMaxval : public Error {
public:
    explicit UnsupportedMaxval(long maxval);
};

// binarize

/// The histogram has a single populated bin; no split exists.
class NoContrast : public Error {
public:
    NoContrast();
};

class BlockTooLarge : public Error {
public:
    BlockTooLarge(int block_size, int limit);
};

// tablegroup

class NoTablesFound : public Error {
public:
    NoTablesFound();
};

// ocrwords

class MalformedRow : public Error {
public:
    MalformedRow(std::size_t line_no, const std::string& reason);
    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::size_t line_no_;
};

// synth

class SpecOverflow : public Error {
public:
    explicit SpecOverflow(const std::string& what);
};

}  // namespace tablegrid
