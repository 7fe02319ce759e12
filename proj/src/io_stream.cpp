#include "modsm/io.hpp"

#include "modsm/errors.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace modsm::io {

namespace {

constexpr std::string_view text_separator = "% ---";

bool is_separator_line(std::string_view line) {
    std::size_t end = line.size();
    while (end > 0 && (line[end - 1] == '\r' || line[end - 1] == ' '))
        --end;
    return line.substr(0, end) == text_separator;
}

bool all_space(std::string_view s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

module decode_smodels_at(std::string_view data, std::size_t& pos);

module_stream_reader::module_stream_reader(std::istream& in, format f) : format_(f) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    data_ = buffer.str();
}

std::optional<module> module_stream_reader::next() {
    const std::size_t current = index_;
    try {
        if (format_ == format::smodels) {
            std::size_t probe = pos_;
            while (probe < data_.size() &&
                   std::isspace(static_cast<unsigned char>(data_[probe])))
                ++probe;
            if (probe >= data_.size())
                return std::nullopt;
            module m = decode_smodels_at(data_, pos_);
            ++index_;
            return m;
        }
        // Text: chunks separated by a "% ---" line. A separator promises a
        // following module, so an empty tail after one still counts.
        if (pos_ >= data_.size() && !pending_after_separator_)
            return std::nullopt;
        std::string chunk;
        bool found_separator = false;
        while (pos_ < data_.size()) {
            std::size_t eol = data_.find('\n', pos_);
            std::string_view line(data_.data() + pos_,
                                  (eol == std::string::npos ? data_.size() : eol) - pos_);
            pos_ = eol == std::string::npos ? data_.size() : eol + 1;
            if (is_separator_line(line)) {
                found_separator = true;
                break;
            }
            chunk.append(line);
            chunk.push_back('\n');
        }
        if (!found_separator && !pending_after_separator_ && all_space(chunk))
            return std::nullopt;
        pending_after_separator_ = found_separator;
        module m = parse_text(chunk);
        ++index_;
        return m;
    } catch (const modsm::error& e) {
        throw modsm::error("stream module " + std::to_string(current) + ": " + e.what());
    }
}

void module_stream_writer::write(const module& m) {
    if (format_ == format::smodels) {
        out_ << encode_smodels(m);
    } else {
        if (count_ > 0)
            out_ << text_separator << "\n";
        out_ << print_text(m, hidden_counter_);
    }
    ++count_;
}

void write_stream(std::ostream& out, const std::vector<module>& modules, format f) {
    module_stream_writer writer(out, f);
    for (const module& m : modules)
        writer.write(m);
}

std::vector<module> read_stream(std::istream& in, format f) {
    module_stream_reader reader(in, f);
    std::vector<module> out;
    while (auto m = reader.next())
        out.push_back(std::move(*m));
    return out;
}

} // namespace modsm::io
