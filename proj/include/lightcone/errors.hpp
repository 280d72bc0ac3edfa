#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lightcone {

// Argument outside the domain of an analytic formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed or inconsistent configuration input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a graph is too fragmented to measure path lengths on.
class GraphError : public std::runtime_error {
public:
    GraphError(const std::string& what, std::size_t n_nodes,
               std::size_t n_components, std::size_t giant_size)
        : std::runtime_error(what),
          n_nodes_(n_nodes),
          n_components_(n_components),
          giant_size_(giant_size) {}

    std::size_t n_nodes() const noexcept { return n_nodes_; }
    std::size_t n_components() const noexcept { return n_components_; }
    std::size_t giant_size() const noexcept { return giant_size_; }

private:
    std::size_t n_nodes_;
    std::size_t n_components_;
    std::size_t giant_size_;
};

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lightcone
