#include "cryscreen/error.hpp"

namespace cryscreen {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Format: return "format error";
        case ErrorKind::UnsupportedEncoding: return "unsupported encoding";
        case ErrorKind::InsufficientAudio: return "insufficient audio";
        case ErrorKind::Configuration: return "configuration error";
        case ErrorKind::DegenerateData: return "degenerate data";
        case ErrorKind::InvalidLabels: return "invalid labels";
        case ErrorKind::Split: return "split error";
        case ErrorKind::UndefinedMetrics: return "undefined metrics";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::VersionUnsupported: return "unsupported version";
        case ErrorKind::Training: return "training error";
    }
    return "error";
}

}  // namespace cryscreen
