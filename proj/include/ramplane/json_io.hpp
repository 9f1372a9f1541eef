#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ramplane/certify.hpp"
#include "ramplane/ffsearch.hpp"
#include "ramplane/pointconf.hpp"
#include "ramplane/projmap.hpp"
#include "ramplane/ramify.hpp"

namespace ramplane {

using Json = nlohmann::json;

// All numeric values are serialized as decimal strings.
std::string int_str(const Int& v);
std::string rat_str(const Rat& v);
Rat rat_from_str(const std::string& s);

Json point_to_json(const ProjectivePoint& p);
ProjectivePoint point_from_json(const Json& j);
Json points_to_json(const std::vector<ProjectivePoint>& pts);
std::vector<ProjectivePoint> points_from_json(const Json& j);

Json map_to_json(const PlaneEndomorphism& f);
PlaneEndomorphism map_from_json(const Json& j);

Json divisor_to_json(const PlaneDivisor& d);
Json fiber_to_json(const FiberReport& r);
Json prop1_to_json(const Prop1Check& r);
Json prop2_audit_to_json(const Prop2Audit& r);
Json constraints_to_json(const ConstraintReport& r);
Json ep_result_to_json(const EpSearchResult& r);
Json prop5_to_json(const Prop5Result& r);
Json lemma5_to_json(const Lemma5Result& r);

MultiplicityConfig config_from_json(const Json& j);
Json config_to_json(const MultiplicityConfig& c);

SearchJob job_from_json(const Json& j);
Json job_to_json(const SearchJob& j);
Json search_report_to_json(const SearchReport& r);
Json crpoints_to_json(const CrPointsResult& r);

// Report envelope. Timings are optional so reports stay byte-stable for a
// fixed seed by default.
Json make_report(const std::string& command, const Json& inputs,
                 const Json& results, uint64_t seed,
                 std::optional<double> seconds = std::nullopt);

}  // namespace ramplane
