#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfts {

// Exit-code buckets used by the CLI: input problems (bad files, bad flags,
// misaligned series) versus numerical degeneracies discovered mid-pipeline.
enum class ErrorKind { Input, Numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& what)
        : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

struct NonPositivePrice : Error {
    explicit NonPositivePrice(std::size_t index)
        : Error(ErrorKind::Input, "NonPositivePrice",
                "price at row " + std::to_string(index) + " is not strictly positive"),
          index(index) {}
    std::size_t index;
};

struct DegenerateSeries : Error {
    explicit DegenerateSeries(const std::string& what = "series has zero variance")
        : Error(ErrorKind::Numeric, "DegenerateSeries", what) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& what)
        : Error(ErrorKind::Numeric, "InsufficientData", what) {}
};

struct ScaleTooLarge : Error {
    ScaleTooLarge(std::size_t scale, std::size_t length)
        : Error(ErrorKind::Input, "ScaleTooLarge",
                "scale " + std::to_string(scale) + " does not fit a series of length " +
                    std::to_string(length)) {}
};

struct RankDeficientFit : Error {
    explicit RankDeficientFit(const std::string& what = "polynomial fit is rank deficient")
        : Error(ErrorKind::Numeric, "RankDeficientFit", what) {}
};

struct DegenerateDetrend : Error {
    explicit DegenerateDetrend(std::size_t scale)
        : Error(ErrorKind::Numeric, "DegenerateDetrend",
                "all segments at scale " + std::to_string(scale) +
                    " are exactly zero after detrending (trend absorbs the signal)") {}
};

struct EmptyFitRange : Error {
    explicit EmptyFitRange(const std::string& what)
        : Error(ErrorKind::Numeric, "EmptyFitRange", what) {}
};

struct NonContiguousValidity : Error {
    explicit NonContiguousValidity(const std::string& what)
        : Error(ErrorKind::Numeric, "NonContiguousValidity", what) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what = "spectra are not on the same q grid")
        : Error(ErrorKind::Numeric, "GridMismatch", what) {}
};

struct ZeroDenominator : Error {
    explicit ZeroDenominator(std::size_t scale)
        : Error(ErrorKind::Numeric, "ZeroDenominator",
                "single-series fluctuation product vanishes or is negative at scale " +
                    std::to_string(scale)),
          scale(scale) {}
    std::size_t scale;
};

struct WindowTooShort : Error {
    explicit WindowTooShort(const std::string& what)
        : Error(ErrorKind::Input, "WindowTooShort", what) {}
};

struct AlignmentError : Error {
    explicit AlignmentError(const std::string& what)
        : Error(ErrorKind::Input, "AlignmentError", what) {}
};

struct InputError : Error {
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, "E_INPUT", what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Input, "E_CONFIG", what) {}
};

} // namespace mfts
