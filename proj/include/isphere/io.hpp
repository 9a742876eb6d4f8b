#pragma once

// JSON forms of every object kind. Rationals are strings ("1/2"); matrices
// are {"rows": r, "cols": c, "data": [[...], ...]} (a bare list of rows is
// accepted on input). Parsing throws UsageError naming the JSON path.

#include "isphere/model.hpp"
#include "isphere/pcdga.hpp"
#include "isphere/pcx.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace isphere::io {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const EventGrid& g);
Json to_json(const DecoratedInterval& i);
Json to_json(const DecoratedBarcode& b);
Json to_json(const PersModule& m);
Json to_json(const PersComplex& x);
Json to_json(const PersComplexMap& f);
Json to_json(const CellAttachment& c);
Json to_json(const CellPresentation& p);
Json to_json(const model::Verdict& v, const EventGrid& g);
Json to_json(const model::LiftingProblem& p);
Json to_json(const model::LiftResult& r);
Json to_json(const model::FactorizationReport& r);
Json to_json(const model::PresentationCheck& c);
Json to_json(const pcdga::FreePresentation& p);
Json to_json(const pcdga::PersCDGA& a);
Json to_json(const pcdga::PersCDGAMap& f);
/// Records in order; polynomials are written in the names known at each step.
Json skeleton_to_json(const std::vector<pcdga::HirschExtensionRecord>& s);
Json to_json(const pcdga::MinimalModel& m);

Rational rational_from_json(const Json& j, const std::string& path = "");
Vector vector_from_json(const Json& j, const std::string& path = "");
Matrix matrix_from_json(const Json& j, const std::string& path = "");
EventGrid grid_from_json(const Json& j, const std::string& path = "");
DecoratedInterval interval_from_json(const Json& j, const std::string& path = "");
DecoratedBarcode barcode_from_json(const Json& j, const std::string& path = "");
PersModule module_from_json(const Json& j, const std::string& path = "");
PersComplex complex_from_json(const Json& j, const std::string& path = "");
PersComplexMap map_from_json(const Json& j, const std::string& path = "");
CellAttachment cell_from_json(const Json& j, const std::string& path = "");
CellPresentation presentation_from_json(const Json& j, const std::string& path = "");
model::LiftingProblem lifting_problem_from_json(const Json& j, const std::string& path = "");
pcdga::FreePresentation free_presentation_from_json(const Json& j, const std::string& path = "");
pcdga::PersCDGA cdga_from_json(const Json& j, const std::string& path = "");
pcdga::PersCDGAMap cdga_map_from_json(const Json& j, const std::string& path = "");
std::vector<pcdga::HirschExtensionRecord> skeleton_from_json(const Json& j, const std::string& path = "");

Json read_json_file(const std::string& file);
void write_json_file(const std::string& file, const Json& j);

} // namespace isphere::io
