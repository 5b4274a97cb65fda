#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "riskched/error.hpp"
#include "riskched/model.hpp"

namespace riskched {

struct FormatIssue {
    std::size_t line = 0;
    /// JSON pointer of the offending element.
    std::string path;
    std::string message;
};

/// Raised for instance files that fail to parse or violate an invariant.
class InstanceFormatError : public Error {
public:
    explicit InstanceFormatError(std::vector<FormatIssue> issues);

    const std::vector<FormatIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<FormatIssue> issues_;
};

/// A structurally well-formed instance plus the source line of every JSON
/// value, keyed by JSON pointer.
struct InstanceDocument {
    Instance instance;
    std::map<std::string, std::size_t> lines;

    /// Line of `pointer`, or of its nearest recorded ancestor.
    std::size_t line_of(std::string_view pointer) const;
};

/// Checks JSON syntax, field presence and types only; invariants such as
/// probabilities summing to one are left to validate_instance.
InstanceDocument read_instance_document(std::string_view text);

/// read_instance_document followed by validate_instance; every violation is
/// reported with its line.
Instance parse_instance(std::string_view text);

/// Reads a file; throws Error(InvalidInstance) if it cannot be opened.
std::string read_text_file(const std::string& path);

/// Parses an integer or an "a/b" string.
Rational rational_from_json(const nlohmann::json& value);
/// Integers as numbers, everything else as "a/b" strings.
nlohmann::ordered_json rational_to_json(const Rational& r);

nlohmann::ordered_json instance_to_json(const Instance& inst);
/// Pretty-printed instance file text.
std::string format_instance(const Instance& inst);

}  // namespace riskched
