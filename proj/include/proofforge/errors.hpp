#pragma once

#include <stdexcept>
#include <string>

namespace proofforge {

// Base class for everything this project throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad flags, malformed config files, empty corpus directories.
class usage_error : public error {
public:
    explicit usage_error(const std::string& what) : error(what) {}
};

// The surrounding machinery is broken or unreachable: missing verifier
// executable, LLM endpoint not configured, scripted-mock digest miss.
// Distinct from a verification failure.
class environment_error : public error {
public:
    explicit environment_error(const std::string& what) : error(what) {}
};

// Input program text does not scan as Dafny.
class parse_error : public error {
public:
    explicit parse_error(const std::string& what) : error(what) {}
};

// Prompt rendering with an incomplete substitution map.
class render_error : public error {
public:
    explicit render_error(const std::string& what) : error(what) {}
};

// Replay-mode lookup miss. Carries the digest so the caller can tell
// which exchange is missing from the cassette.
class cassette_miss_error : public environment_error {
public:
    explicit cassette_miss_error(const std::string& digest)
        : environment_error("cassette replay miss for request digest " + digest), _digest(digest) {}

    [[nodiscard]] const std::string& digest() const { return _digest; }

private:
    std::string _digest;
};

// Asking for a retry index past the configured budget.
class out_of_budget_error : public error {
public:
    explicit out_of_budget_error(const std::string& what) : error(what) {}
};

} // namespace proofforge
