#include "heightnorm/error.hpp"

namespace heightnorm {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::schema: return "schema error";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::geometry: return "geometry error";
    case ErrorKind::insufficient_correspondence: return "insufficient-correspondence error";
    case ErrorKind::degenerate_configuration: return "degenerate-configuration error";
    case ErrorKind::io: return "io error";
    }
    return "error";
}

namespace {
std::string format(ErrorKind kind, const std::string& message, const std::string& stage) {
    std::string out = stage.empty() ? std::string{} : "[" + stage + "] ";
    return out + to_string(kind) + ": " + message;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string stage)
    : std::runtime_error(format(kind, message, stage)),
      kind_(kind),
      stage_(std::move(stage)),
      detail_(message) {}

Error Error::with_stage(const std::string& stage) const {
    if (!stage_.empty()) {
        return *this;
    }
    return Error(kind_, detail_, stage);
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::geometry:
    case ErrorKind::degenerate_configuration:
        return 3;
    default:
        return 2;
    }
}

}  // namespace heightnorm
