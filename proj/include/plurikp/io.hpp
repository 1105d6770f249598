#ifndef PLURIKP_IO_HPP
#define PLURIKP_IO_HPP

// Field files, chain files and suite reports. Everything is JSON except
// chain files, which hold one "<coefficient> <cell>" per line.

#include <string>

#include "plurikp/cell_complex.hpp"
#include "plurikp/field.hpp"
#include "plurikp/verifier.hpp"

namespace plurikp {

inline constexpr int kFormatVersion = 1;

/// {"format_version", "lattice", "dimension", "values": {"c0,c1,...": x}}.
std::string field_to_json(const Field& field);
/// Throws FormatError on malformed text and SingularError on zero values.
Field field_from_json(const std::string& text);

Field read_field(const std::string& path);
void write_field(const std::string& path, const Field& field);

/// Blank lines and lines starting with '#' are skipped.
Chain parse_chain(const std::string& text);
Chain read_chain(const std::string& path);

std::string report_to_json(const SuiteResult& result, const SuiteConfig& config);
void write_report(const std::string& path, const SuiteResult& result, const SuiteConfig& config);

/// Whole-file helpers; throw IoError. Writes go through a temporary file
/// renamed into place.
std::string read_text(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace plurikp

#endif  // PLURIKP_IO_HPP
