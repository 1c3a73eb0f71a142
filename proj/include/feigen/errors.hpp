#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace feigen {

class ParseError : public std::runtime_error {
public:
    // offset is 1-based, in bytes.
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class DomainFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CascadeNotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BifurcationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace feigen
