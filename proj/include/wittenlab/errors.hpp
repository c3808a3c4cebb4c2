#pragma once

#include <stdexcept>
#include <string>

namespace wittenlab {

// Error taxonomy. Each code maps to one of the two CLI failure exit codes:
// configuration/validation problems exit with 2, numerical failures with 3.
enum class ErrorCode {
    invalid_argument,       // bad parameter value (counts, tolerances, slopes, ...)
    config_error,           // unreadable or malformed configuration
    parse_error,            // malformed mesh file
    non_manifold,           // edge with != 2 incident triangles in a closed surface
    degenerate_mesh,        // non-positive dual weight or zero-area simplex
    domain_mismatch,        // field evaluated on the wrong model kind
    unsupported_dimension,  // oscillator model with n > 2, and similar
    not_morse,              // degenerate critical point of a scalar field
    not_leafwise_morse,     // leaf restriction with a degenerate critical point
    overflow_guard,         // |f(b_tau) - f(b_sigma)| / t exceeds the exponent budget
    solver_failure,         // eigensolver did not certify residuals within its budget
    insufficient_k,         // trace support check failed: t*lambda_k inside supp(phi)
    io_error,               // output files could not be written
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    // True for failures discovered while computing, as opposed to rejected inputs.
    bool numerical() const {
        switch (code_) {
            case ErrorCode::degenerate_mesh:
            case ErrorCode::not_morse:
            case ErrorCode::not_leafwise_morse:
            case ErrorCode::overflow_guard:
            case ErrorCode::solver_failure:
            case ErrorCode::insufficient_k:
                return true;
            default:
                return false;
        }
    }

    int exit_code() const { return numerical() ? 3 : 2; }

  private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace wittenlab
