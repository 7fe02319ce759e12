#pragma once

#include "modsm/module.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modsm::io {

enum class format { text, smodels };

/// Parses one module in the textual syntax; atoms not declared by a header
/// default to the output signature. Diagnostics carry line and column.
module parse_text(std::string_view text);

/// Deterministic canonical text (headers, then rules sorted by their printed
/// form). Nameless atoms are given _h<k> names starting at `hidden_counter`,
/// which advances; stream writers thread it through so names stay unique
/// across a stream.
std::string print_text(const module& m, std::size_t& hidden_counter);
std::string print_text(const module& m);

/// The module with every nameless atom named _h<k>; print_text(m) equals
/// print_text(with_hidden_names(m, k)) for the same counter start.
module with_hidden_names(const module& m, std::size_t& hidden_counter);

/// Decodes one module in the numeric rule format. An optional leading
/// `% modsm-iface` line carries the input ids and the hidden ids that the
/// plain format cannot express; without it, symbol-table atoms are outputs
/// and unnamed atoms are hidden.
module decode_smodels(std::string_view bytes);

/// Deterministic numeric encoding; decode_smodels inverts it exactly.
/// Visible atoms must be named.
std::string encode_smodels(const module& m);

/// Reads a concatenation of serialized modules; text modules are separated
/// by a `% ---` line, numeric modules are self-delimiting. Errors carry the
/// zero-based stream index of the offending module.
class module_stream_reader {
public:
    module_stream_reader(std::istream& in, format f);

    std::optional<module> next();

    std::size_t index() const { return index_; }

private:
    std::string data_;
    std::size_t pos_ = 0;
    std::size_t index_ = 0;
    bool pending_after_separator_ = false;
    format format_;
};

/// Order-preserving stream writer; text mode threads the hidden-name counter
/// across modules.
class module_stream_writer {
public:
    module_stream_writer(std::ostream& out, format f) : out_(out), format_(f) {}

    void write(const module& m);

    std::size_t written() const { return count_; }

private:
    std::ostream& out_;
    format format_;
    std::size_t count_ = 0;
    std::size_t hidden_counter_ = 1;
};

void write_stream(std::ostream& out, const std::vector<module>& modules, format f);

std::vector<module> read_stream(std::istream& in, format f);

} // namespace modsm::io
