#include "qcap/error.hpp"

namespace qcap {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_input: return "InvalidInput";
        case ErrorKind::not_psd: return "NotPSD";
        case ErrorKind::linear_dependence: return "LinearDependence";
        case ErrorKind::resource_limit: return "ResourceLimit";
        case ErrorKind::unconverged: return "Unconverged";
        case ErrorKind::no_root: return "NoRoot";
        case ErrorKind::io: return "IOError";
    }
    return "Error";
}

}  // namespace qcap
