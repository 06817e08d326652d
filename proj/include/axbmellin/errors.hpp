#pragma once

#include <stdexcept>
#include <string>

namespace axb {

// Bad user input: unknown builtin name, invalid parameters, malformed config.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation was asked to evaluate outside the region its certificates
// cover (e.g. a Mellin abscissa outside the convergence band).  The message
// names the violated certificate.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// The requested tolerance cannot be certified with the available budget
// (series cap, grid extent).  Carries the diagnostic the caller needs.
class tolerance_error : public std::runtime_error {
public:
    explicit tolerance_error(const std::string& what) : std::runtime_error(what) {}
};

// A declared certificate failed its audit.  Never tolerated silently:
// every downstream tail bound depends on the certificates being true.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace axb
