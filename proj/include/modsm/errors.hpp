#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modsm {

/// Base class for all errors raised by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text or byte stream; carries a 1-based source position.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

/// Input uses a feature that is recognized but deliberately not supported
/// (minimize statements, numeric rule type 6).
class unsupported_feature : public error {
public:
    using error::error;
};

/// Surface rule cannot be brought into canonical form.
class desugar_error : public error {
public:
    using error::error;
};

/// An enumeration would exceed the configured candidate or rule cap.
class cap_exceeded : public error {
public:
    using error::error;
};

/// Requested atoms are not part of the expected signature slice.
class signature_error : public error {
public:
    using error::error;
};

/// instantiate() called with atoms outside the input signature.
class input_mismatch : public error {
public:
    using error::error;
};

/// Modules offered for comparison do not share the required interface.
class interface_mismatch : public error {
public:
    using error::error;
};

/// Composition preconditions failed; names the offending atoms.
class composition_error : public error {
public:
    composition_error(const std::string& what,
                      std::vector<std::string> output_clash,
                      std::vector<std::string> hidden_leak)
        : error(what),
          output_clash(std::move(output_clash)),
          hidden_leak(std::move(hidden_leak)) {}

    std::vector<std::string> output_clash;
    std::vector<std::string> hidden_leak;
};

/// Join rejected because the composed modules share a positive SCC.
class mutual_dependence_error : public error {
public:
    mutual_dependence_error(const std::string& what, std::vector<std::string> scc)
        : error(what), scc(std::move(scc)) {}

    /// Atom names of one SCC shared by both output signatures.
    std::vector<std::string> scc;
};

class not_splitting_set : public error {
public:
    using error::error;
};

class non_normal_rule : public error {
public:
    using error::error;
};

} // namespace modsm
