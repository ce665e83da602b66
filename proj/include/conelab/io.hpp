#pragma once

// JSON round-trips for elements and Jordan isos, plus report emission.
// Writing goes through a canonical emitter (fixed key order, floats at 17
// significant digits) so identical runs produce byte-identical files.

#include <string>

#include "conelab/suites.hpp"

namespace conelab {

std::string format_double(double v);  // %.17g

std::string to_json(const Element& e);
std::string to_json(const JordanIso& j);
std::string to_json(const Witness& w);
std::string to_json(const SuiteReport& r);

Element element_from_json(const std::string& text);
JordanIso jordan_from_json(const std::string& text);

Element load_element(const std::string& path);
void save_element(const std::string& path, const Element& e);
JordanIso load_jordan(const std::string& path);
void save_jordan(const std::string& path, const JordanIso& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Human-readable one-suite summary.
std::string format_report_text(const SuiteReport& r);

}  // namespace conelab
