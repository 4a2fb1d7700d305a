#ifndef HDA_IO_HPP
#define HDA_IO_HPP

#include <iosfwd>
#include <string>

#include "hda/hda.hpp"
#include "hda/path.hpp"

namespace hda {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "pcs v1" text format. HDA records (init/final/label) are optional
// extensions of the same format; write_hda emits them, read_pcs ignores a
// bare precubical file's absence of them.
std::string write_pcs(const PrecubicalSet& p);
std::string write_hda(const Hda& a);
PrecubicalSet read_pcs(const std::string& text);
Hda read_hda(const std::string& text);

// True when the text carries init/final/label records (an HDA rather than a
// bare precubical set).
bool model_has_hda_records(const std::string& text);

std::string write_path(const Path& w);
Path read_path(const std::string& line);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Quoting for label tokens: double quotes, backslash escapes for " and \.
std::string quote(const std::string& s);

}  // namespace hda

#endif
