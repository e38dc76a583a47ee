#pragma once

#include <stdexcept>
#include <string>

namespace tracealg {

// Exit-code taxonomy shared between library errors and the CLI.
enum class ExitCode : int {
    ok = 0,
    failure = 1,
    parse = 2,
    verification = 3,
    unsupported = 4,
    cutoff = 5,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ExitCode::parse, what) {}
};

class VerificationError : public Error {
public:
    explicit VerificationError(const std::string& what) : Error(ExitCode::verification, what) {}
};

class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(ExitCode::unsupported, what) {}
};

class CutoffError : public Error {
public:
    explicit CutoffError(const std::string& what) : Error(ExitCode::cutoff, what) {}
};

}  // namespace tracealg
