#include "wittenlab/errors.hpp"

namespace wittenlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::config_error: return "config-error";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::non_manifold: return "non-manifold";
        case ErrorCode::degenerate_mesh: return "degenerate-mesh";
        case ErrorCode::domain_mismatch: return "domain-mismatch";
        case ErrorCode::unsupported_dimension: return "unsupported-dimension";
        case ErrorCode::not_morse: return "not-morse";
        case ErrorCode::not_leafwise_morse: return "not-leafwise-morse";
        case ErrorCode::overflow_guard: return "overflow-guard";
        case ErrorCode::solver_failure: return "solver-failure";
        case ErrorCode::insufficient_k: return "insufficient-k";
        case ErrorCode::io_error: return "io-error";
    }
    return "?";
}

}  // namespace wittenlab
