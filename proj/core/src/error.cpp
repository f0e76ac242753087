#include "slowlight/error.hpp"

namespace slowlight {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Numeric: return "numeric";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace slowlight
