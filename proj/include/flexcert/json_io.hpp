#pragma once

#include "flexcert/framework.hpp"
#include "flexcert/polynomial.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace flexcert {

using Json = nlohmann::ordered_json;

// Malformed or invalid input; the message names the file position or field.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws InputError with line and column on a syntax error.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

struct SystemInput {
    QuadraticSystem system;
    std::optional<Vector> base_point;
};

struct GeneralInput {
    GeneralPolySystem system;
    std::optional<Vector> base_point;
};

// True when some equation uses the "terms" form.
bool is_general_system(const Json& j);

SystemInput parse_system(const Json& j);
GeneralInput parse_general_system(const Json& j);
Framework parse_framework(const Json& j);

Json scalar_to_json(const Scalar& x);
Json vector_to_json(const Vector& v);
Json system_to_json(const QuadraticSystem& sys, const std::optional<Vector>& base_point);
Json general_to_json(const GeneralPolySystem& sys, const std::optional<Vector>& base_point);
Json framework_to_json(const Framework& fw);
Json reduction_to_json(const Reduction& r, const std::optional<Vector>& base_point);

Json series_to_json(const Series& s);
Series series_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json report_to_json(const AnalysisReport& r);
Json framework_report_to_json(const FrameworkReport& r);

}  // namespace flexcert
