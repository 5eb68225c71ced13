#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eqsat {

/// Malformed s-expression or theory text. `offset` is a byte offset for
/// terms and patterns; `line` is 1-based for theory files (0 when unknown).
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t offset, std::size_t line = 0)
        : std::runtime_error(what), offset_(offset), line_(line) {}

    std::size_t offset() const noexcept { return offset_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t offset_;
    std::size_t line_;
};

/// Theory-level semantic error: duplicate rule names, scoping, unknown guards.
class TheoryError : public std::runtime_error {
public:
    TheoryError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnboundVariable : public std::runtime_error {
public:
    explicit UnboundVariable(const std::string& var)
        : std::runtime_error("unbound pattern variable ?" + var), var_(var) {}
    const std::string& variable() const noexcept { return var_; }

private:
    std::string var_;
};

class InvalidId : public std::out_of_range {
public:
    explicit InvalidId(std::uint64_t id)
        : std::out_of_range("invalid e-class id " + std::to_string(id)) {}
};

/// Raised by operations that require a rebuilt graph.
class DirtyGraph : public std::logic_error {
public:
    DirtyGraph() : std::logic_error("e-graph has pending repairs; call rebuild() first") {}
};

class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(std::size_t limit)
        : std::runtime_error("e-graph node capacity of " + std::to_string(limit) + " exceeded") {}
};

/// Two distinct constants ended up in the same e-class.
class AnalysisInconsistency : public std::runtime_error {
public:
    AnalysisInconsistency(const std::string& what, std::uint64_t eclass)
        : std::runtime_error(what), eclass_(eclass) {}
    std::uint64_t eclass() const noexcept { return eclass_; }

private:
    std::uint64_t eclass_;
};

class Unextractable : public std::runtime_error {
public:
    explicit Unextractable(std::uint64_t eclass)
        : std::runtime_error("e-class " + std::to_string(eclass) + " has no finite-cost term") {}
};

} // namespace eqsat
