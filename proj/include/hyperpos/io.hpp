#pragma once

#include <string>

#include <json.hpp>

#include "hyperpos/function_classes.hpp"
#include "hyperpos/impedance.hpp"
#include "hyperpos/kyp.hpp"
#include "hyperpos/realization.hpp"
#include "hyperpos/reduction.hpp"

namespace hyperpos {

using Json = nlohmann::json;

// Entries are [re, im] pairs or bare reals; matrices are arrays of rows.
Matrix matrix_from_json(const Json& j, int rows, int cols);
Json matrix_to_json(const Matrix& m);

Realization realization_from_json(const Json& j);
Json realization_to_json(const Realization& r);

RealizationPolytope polytope_from_json(const Json& j);
Json polytope_to_json(const RealizationPolytope& p);

Certificate certificate_from_json(const Json& j);
Json certificate_to_json(const Certificate& c);

ImpedanceTree tree_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip decimal form, independent of locale.
std::string format_double(double x);

// CSV with header omega,re_i_j,im_i_j (1-based), one row per frequency, LF endings.
std::string nyquist_csv(const Realization& r, const FrequencyGrid& grid);
void nyquist_emit(const Realization& r, const FrequencyGrid& grid, const std::string& path);

}  // namespace hyperpos
