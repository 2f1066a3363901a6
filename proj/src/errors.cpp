#include "hyperac/errors.hpp"

#include <sstream>

namespace hyperac {

namespace {

std::string blow_up_message(std::size_t cell, double time) {
    std::ostringstream os;
    os << "non-finite value in cell " << cell << " at t = " << time
       << " (unstable parameters or inadmissible initial data)";
    return os.str();
}

std::string certificate_message(std::size_t jump, double position, const std::string& side) {
    std::ostringstream os;
    os << "layer certificate failed at jump " << jump << " (x = " << position << "): no sample of the expected sign on the "
       << side << " side";
    return os.str();
}

}  // namespace

BlowUp::BlowUp(std::size_t cell, double time) : Error(blow_up_message(cell, time)), cell_(cell), time_(time) {}

CertificateFailure::CertificateFailure(std::size_t jump, double position, const std::string& side)
    : Error(certificate_message(jump, position, side)), jump_(jump) {}

}  // namespace hyperac
