#pragma once

#include <stdexcept>
#include <string>

namespace qubitmech {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind { Config, Solver, Io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& name, const std::string& what)
        : std::runtime_error(name + ": " + what), kind_(kind), name_(name) {}
    ErrorKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

#define QUBITMECH_DEFINE_ERROR(Name, Kind)                      \
    class Name : public Error {                                 \
    public:                                                     \
        explicit Name(const std::string& what)                  \
            : Error(ErrorKind::Kind, #Name, what) {}            \
    }

QUBITMECH_DEFINE_ERROR(NonPositiveEnergy, Config);
QUBITMECH_DEFINE_ERROR(NonFinite, Config);
QUBITMECH_DEFINE_ERROR(NonPositiveInput, Config);
QUBITMECH_DEFINE_ERROR(DimensionTooSmall, Config);
QUBITMECH_DEFINE_ERROR(DomainTooSmall, Config);
QUBITMECH_DEFINE_ERROR(UnsupportedObservable, Config);
QUBITMECH_DEFINE_ERROR(UnsupportedBasis, Config);
QUBITMECH_DEFINE_ERROR(BasisMismatch, Config);
QUBITMECH_DEFINE_ERROR(BadK, Config);
QUBITMECH_DEFINE_ERROR(BadLevel, Config);
QUBITMECH_DEFINE_ERROR(ParseError, Config);
QUBITMECH_DEFINE_ERROR(SchemaError, Config);
QUBITMECH_DEFINE_ERROR(ConfigError, Config);
QUBITMECH_DEFINE_ERROR(NoConvergence, Solver);
QUBITMECH_DEFINE_ERROR(SingleWell, Solver);
QUBITMECH_DEFINE_ERROR(RootFindingFailure, Solver);
QUBITMECH_DEFINE_ERROR(IoError, Io);

#undef QUBITMECH_DEFINE_ERROR

}  // namespace qubitmech
