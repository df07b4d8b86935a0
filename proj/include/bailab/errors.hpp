#pragma once

#include <stdexcept>
#include <string>

namespace bailab {

// Base type for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (wrong family, bad challenger, ...).
class usage_error : public error {
public:
    using error::error;
};

// A value is outside its mathematical domain (Bernoulli mean at 0 or 1, ...).
class domain_error : public error {
public:
    using error::error;
};

// An instance, weight vector or config failed validation.
class validation_error : public error {
public:
    using error::error;
};

// Config file could not be parsed or is missing required fields.
class config_error : public error {
public:
    using error::error;
};

// Rate regression has fewer than the required number of usable points.
class insufficient_data_error : public error {
public:
    using error::error;
};

} // namespace bailab
