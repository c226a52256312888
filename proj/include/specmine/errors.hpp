#pragma once

#include <stdexcept>
#include <string>

namespace specmine {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyInputError : Error {
    using Error::Error;
};
struct EncodingError : Error {
    using Error::Error;
};
struct RootDecomposeError : Error {
    using Error::Error;
};
struct DegenerateDataError : Error {
    using Error::Error;
};
struct EmptyCorpusError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct FormatError : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct StaleCacheError : Error {
    using Error::Error;
};
struct PathError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace specmine
