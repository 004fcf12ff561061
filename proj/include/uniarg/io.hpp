#pragma once

#include <string>

#include "json.hpp"
#include "uniarg/bounds.hpp"
#include "uniarg/campaign.hpp"
#include "uniarg/numrange.hpp"
#include "uniarg/types.hpp"

namespace uniarg {

using Json = nlohmann::json;

// Shortest stable decimal form that round-trips a double (CSV cells).
std::string format_double(double x);

// Matrix files: {"n": int, "re": [[...]], "im": [[...]]}, row-major.
// Values round-trip bit-exactly through save and load.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Matrix load_matrix_file(const std::string& path);
void save_matrix_file(const Matrix& m, const std::string& path);

Json to_json(const ToleranceProfile& profile);
// Starts from `base` and overrides any of its fields present in j.
ToleranceProfile profile_from_json(const Json& j, ToleranceProfile base);
ToleranceProfile load_profile_file(const std::string& path, ToleranceProfile base);

Json to_json(const EigenSystem& system);
Json to_json(const BoundReport& report);
Json to_json(const ReductionAudit& audit);
Json to_json(const MinMaxReport& report);
Json to_json(const ProductPhase& phase);
Json to_json(const ArgRange& range);

// Canonical campaign summary: a pure function of the campaign configuration
// and results.  Scheduling knobs (threads) and wall time are deliberately
// left out so reruns and thread-count changes stay byte-identical.
Json to_json(const CampaignSummary& summary);
Json to_json(const ReplayRecord& record);

}  // namespace uniarg
