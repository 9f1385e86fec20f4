#pragma once

#include <stdexcept>
#include <string>

namespace tcbga {

/// Bad configuration or input data. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DataError : public ConfigError {
public:
    explicit DataError(const std::string& what) : ConfigError(what) {}
};

} // namespace tcbga
