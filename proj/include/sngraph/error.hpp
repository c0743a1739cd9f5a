#pragma once

#include <stdexcept>
#include <string>

namespace sngraph {

// Base for every failure raised by the library. Batch mode catches this per
// model and keeps going.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MeshError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace sngraph
