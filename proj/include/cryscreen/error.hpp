#pragma once

#include <stdexcept>
#include <string>

namespace cryscreen {

enum class ErrorKind {
    Format,               // malformed container or file
    UnsupportedEncoding,  // compressed / float WAV
    InsufficientAudio,
    Configuration,        // bad parameters or dimension mismatch
    DegenerateData,
    InvalidLabels,
    Split,
    UndefinedMetrics,
    Parse,
    VersionUnsupported,
    Training,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cryscreen
