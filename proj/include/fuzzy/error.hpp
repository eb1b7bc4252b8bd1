#ifndef FUZZY_ERROR_HPP
#define FUZZY_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzy {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class InvalidData : public Error {
public:
    using Error::Error;
};

class EmptyCluster : public Error {
public:
    EmptyCluster(std::size_t cluster, const std::string& what)
        : Error(what), cluster_(cluster) {}
    std::size_t cluster() const noexcept { return cluster_; }

private:
    std::size_t cluster_;
};

// Raised once the ridge ladder is exhausted for a cluster covariance.
class DegenerateCluster : public Error {
public:
    DegenerateCluster(std::size_t cluster, const std::string& what)
        : Error(what), cluster_(cluster) {}
    std::size_t cluster() const noexcept { return cluster_; }

private:
    std::size_t cluster_;
};

class UnknownScenario : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class DimensionUnsupported : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace fuzzy

#endif  // FUZZY_ERROR_HPP
