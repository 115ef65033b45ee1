#pragma once

#include <stdexcept>
#include <string>

namespace heightnorm {

enum class ErrorKind {
    domain,
    schema,
    validation,
    geometry,
    insufficient_correspondence,
    degenerate_configuration,
    io,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (and the CLI
/// exit-code mapping) what went wrong, `stage()` which pipeline step raised it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string stage = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& stage() const noexcept { return stage_; }
    const std::string& detail() const noexcept { return detail_; }

    /// Copy of this error labelled with a pipeline stage (outermost label wins).
    Error with_stage(const std::string& stage) const;

private:
    ErrorKind kind_;
    std::string stage_;
    std::string detail_;
};

/// CLI exit code: 2 for input/validation problems, 3 for geometry problems.
int exit_code_for(ErrorKind kind);

}  // namespace heightnorm
