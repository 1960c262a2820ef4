#ifndef REVXDT_IO_HPP
#define REVXDT_IO_HPP

#include <string>

#include "revxdt/sst.hpp"
#include "revxdt/transducer.hpp"

namespace revxdt {

// Errors: malformed-json, schema-violation (with a JSON path).
Transducer parse_transducer(const std::string& text);
// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_transducer(const Transducer& t, bool with_tags = false);

Sst parse_sst(const std::string& text);
std::string serialize_sst(const Sst& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

Transducer load_transducer(const std::string& path);
Sst load_sst(const std::string& path);

std::string report_json(const PropertyReport& r, const Transducer& t);

std::string machine_dot(const Transducer& t);

}  // namespace revxdt

#endif
